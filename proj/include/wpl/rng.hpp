#pragma once

#include <cstdint>
#include <cmath>

namespace wpl {

// splitmix64: used both as a stand-alone generator and to derive per-task
// seeds from a master seed. Deterministic across platforms.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // standard normal via Box-Muller (no cached second value, keeps state simple)
    double normal() {
        double u1 = next_double();
        double u2 = next_double();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }
};

// Derive an independent stream seed from a master seed and a stream index.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 g(master ^ (0xd1342543de82ef95ULL * (index + 1)));
    g.next_u64();
    return g.next_u64();
}

} // namespace wpl
