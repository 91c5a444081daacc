#include "wpl/profiles.hpp"
#include "wpl/fft.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace wpl {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::VectorXcd sample_on_unit(const std::function<double(double)>& fn, Eigen::Index m) {
    Eigen::VectorXcd v(m);
    const double h = 2.0 / static_cast<double>(m - 1);
    for (Eigen::Index j = 0; j < m; ++j) v[j] = Complex(fn(-1.0 + h * j), 0.0);
    return v;
}

// enough samples to put `per_ramp` points across the finest ramp, floor 4096
Eigen::Index pick_samples(Eigen::Index requested, double ramp, double per_ramp = 16.0) {
    if (requested != 0) return requested;
    const double need = 2.0 * per_ramp / ramp;
    Eigen::Index m = static_cast<Eigen::Index>(next_pow2(static_cast<std::size_t>(std::ceil(need))));
    return std::max<Eigen::Index>(m, 4096);
}

} // namespace

double BumpSpec::eval(double omega) const {
    const double u = std::abs(omega - center);
    if (u <= plateau_halfwidth) return 1.0;
    if (u >= support_halfwidth) return 0.0;
    const double s = (u - plateau_halfwidth) / (support_halfwidth - plateau_halfwidth);
    // cos^2 ramp; antisymmetric about the ramp midpoint, so complementary
    // translates (plateau + support = lattice spacing) sum to exactly 1
    const double c = std::cos(0.5 * kPi * s);
    return c * c;
}

FrequencyProfile make_f0(Eigen::Index samples) {
    BumpSpec b{0.0, 0.5, 1.0, false};
    return make_profile(sample_on_unit([&](double w) { return b.eval(w); },
                                       pick_samples(samples, 0.5)),
                        "f0");
}

FrequencyProfile make_f1(double R, Eigen::Index samples) {
    if (!(R > 0.0)) throw std::invalid_argument("make_f1: R must be positive");
    const double a = 1.0 / std::sqrt(R);
    if (2.0 * a > 1.0) throw std::invalid_argument("make_f1: R too small for the support");
    BumpSpec b{0.0, a, 2.0 * a, false};
    return make_profile(sample_on_unit([&](double w) { return b.eval(w); },
                                       pick_samples(samples, a)),
                        "f1(R=" + std::to_string(static_cast<long long>(R)) + ")");
}

FrequencyProfile make_many(double U, Eigen::Index samples) {
    if (!(U > 0.0) || U > 0.5) throw std::invalid_argument("make_many: U out of range");
    BumpSpec b{0.0, 0.5 * U, U, false};
    return make_profile(sample_on_unit([&](double w) { return b.eval(w); },
                                       pick_samples(samples, 0.5 * U)),
                        "many(U=" + std::to_string(U) + ")");
}

FrequencyProfile make_bundle(double R, int N, Eigen::Index samples) {
    if (!(R > 0.0)) throw std::invalid_argument("make_bundle: R must be positive");
    if (N < 1 || static_cast<double>(N) >= std::sqrt(R))
        throw std::invalid_argument("make_bundle: need integer 1 <= N < sqrt(R)");
    const double a = 1.0 / std::sqrt(R);
    const double p = 0.5 * a / N, s = a / N;
    // ramps get narrow at N ~ sqrt(R); 8 samples per ramp keeps the profile
    // size at 16 sqrt(R) N and the quadrature error well under the tolerances
    Eigen::Index m = pick_samples(samples, p, 8.0);
    auto fn = [&](double w) {
        // bumps are disjoint; only the nearest lattice point can contribute
        const double k = std::round(w * std::sqrt(R));
        double acc = 0.0;
        for (double n = k - 1; n <= k + 1; ++n) {
            if (std::abs(n) > N) continue;
            acc += BumpSpec{n * a, p, s, false}.eval(w);
        }
        return acc;
    };
    return make_profile(sample_on_unit(fn, m),
                        "bundle(R=" + std::to_string(static_cast<long long>(R)) +
                            ",N=" + std::to_string(N) + ")");
}

FrequencyProfile make_star(double R, int N, Eigen::Index samples) {
    if (!(R > 0.0)) throw std::invalid_argument("make_star: R must be positive");
    if (N < 1 || static_cast<double>(N) >= std::sqrt(R) - 1.0)
        throw std::invalid_argument("make_star: need integer 1 <= N < sqrt(R) - 1");
    const double a = 1.0 / std::sqrt(R);
    Eigen::Index m = pick_samples(samples, 0.5 * a);
    auto fn = [&](double w) {
        const double k = std::round(w * std::sqrt(R));
        double acc = 0.0;
        for (double n = k - 1; n <= k + 1; ++n) {
            if (std::abs(n) > N) continue;
            acc += BumpSpec{n * a, 0.25 * a, 0.75 * a, true}.eval(w);
        }
        return acc;
    };
    return make_profile(sample_on_unit(fn, m),
                        "star(R=" + std::to_string(static_cast<long long>(R)) +
                            ",N=" + std::to_string(N) + ")");
}

Eigen::Index samples_for_ball(double R, double oversample) {
    const double guard = 4.0 * 3.0 * R / kPi;  // x_half = t_half = R
    return static_cast<Eigen::Index>(
        next_pow2(static_cast<std::size_t>(std::ceil(oversample * guard))));
}

} // namespace wpl
