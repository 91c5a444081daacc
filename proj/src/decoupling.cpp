#include "wpl/decoupling.hpp"
#include "wpl/extension.hpp"
#include "wpl/fft.hpp"
#include "wpl/harness.hpp"
#include "wpl/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace wpl {

namespace {

constexpr double kPi = 3.14159265358979323846;

int grid_size_for(double delta) {
    const double need = 3.5 / delta;
    int n = static_cast<int>(next_pow2(static_cast<std::size_t>(std::ceil(need))));
    return std::clamp(n, 128, 1024);
}

// inverse 2-D FFT (unscaled) of a sparse spectrum on an n x n grid
Eigen::MatrixXcd synth_grid(const std::vector<ArcFunctionEnsemble::FreqPoint>& pts, int n,
                            long shift1 = 0, long shift2 = 0) {
    Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& p : pts) {
        const long k1 = ((p.k1 - shift1) % n + n) % n;
        const long k2 = ((p.k2 - shift2) % n + n) % n;
        f(k1, k2) += p.amp;
    }
    // rows then columns
    for (int r = 0; r < n; ++r) {
        Eigen::VectorXcd row = f.row(r);
        fft_inverse_unscaled(row);
        f.row(r) = row;
    }
    for (int c = 0; c < n; ++c) {
        Eigen::VectorXcd col = f.col(c);
        fft_inverse_unscaled(col);
        f.col(c) = col;
    }
    return f;
}

double weighted_l6(const Eigen::MatrixXcd& g, double side) {
    const int n = static_cast<int>(g.rows());
    const double dA = (side / n) * (side / n);
    const double rw = side / 4.0;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x1 = side * i / n - side / 2.0;
        for (int j = 0; j < n; ++j) {
            const double x2 = side * j / n - side / 2.0;
            const double w = eta_radial(std::hypot(x1 / rw, x2 / rw));
            const double a = std::abs(g(i, j)) * std::abs(w);
            const double a2 = a * a;
            acc += a2 * a2 * a2;
        }
    }
    return std::pow(acc * dA, 1.0 / 6.0);
}

} // namespace

int ArcFunctionEnsemble::active_arcs() const {
    int n = 0;
    for (const auto& arc : arcs) {
        for (const auto& p : arc) {
            if (std::abs(p.amp) > 0.0) {
                ++n;
                break;
            }
        }
    }
    return n;
}

ArcFunctionEnsemble synthesize_ensemble(double delta, std::uint64_t seed,
                                        const EnsembleOptions& opts) {
    if (!(delta > 0.0) || delta > 0.25)
        throw std::invalid_argument("synthesize_ensemble: delta must be in (0, 1/4]");
    if (1.0 / std::sqrt(delta) > 64.0 + 1e-9)
        throw std::invalid_argument("synthesize_ensemble: arc count budget exceeded");
    ArcFunctionEnsemble ens;
    ens.delta = delta;
    ens.seed = seed;
    ens.n_arcs = static_cast<int>(std::lround(2.0 / std::sqrt(delta)));
    ens.side = 2.0 * kPi / delta;
    ens.grid_n = grid_size_for(delta);
    ens.arcs.resize(ens.n_arcs);

    const double arc_len = 2.0 / ens.n_arcs;
    SplitMix64 rng(seed);
    const long kmax = static_cast<long>(std::floor(1.0 / delta));
    for (long k1 = -kmax; k1 <= kmax; ++k1) {
        const double w = k1 * delta;
        if (w < -1.0 || w > 1.0) continue;
        int arc = static_cast<int>(std::floor((w + 1.0) / arc_len));
        arc = std::clamp(arc, 0, ens.n_arcs - 1);
        const double w2 = w * w;
        const long k2lo = static_cast<long>(std::ceil((w2 - delta) / delta - 1e-9));
        const long k2hi = static_cast<long>(std::floor((w2 + delta) / delta + 1e-9));
        for (long k2 = k2lo; k2 <= k2hi; ++k2) {
            ArcFunctionEnsemble::FreqPoint p;
            p.k1 = k1;
            p.k2 = k2;
            if (opts.law == AmplitudeLaw::UnitPhase) {
                const double phase = 2.0 * kPi * rng.next_double();
                p.amp = Complex(std::cos(phase), std::sin(phase));
            } else {
                p.amp = Complex(rng.normal(), rng.normal()) * 0.7071067811865476;
            }
            ens.arcs[static_cast<std::size_t>(arc)].push_back(p);
        }
    }
    if (opts.keep_arc >= 0) {
        for (int a = 0; a < ens.n_arcs; ++a)
            if (a != opts.keep_arc) ens.arcs[static_cast<std::size_t>(a)].clear();
        if (opts.single_point && !ens.arcs[static_cast<std::size_t>(opts.keep_arc)].empty())
            ens.arcs[static_cast<std::size_t>(opts.keep_arc)].resize(1);
    }
    return ens;
}

void parseval_check(const ArcFunctionEnsemble& ens, double& g_l2_sq, double& arcs_l2_sq) {
    std::vector<ArcFunctionEnsemble::FreqPoint> all;
    for (const auto& arc : ens.arcs) all.insert(all.end(), arc.begin(), arc.end());
    const int n = ens.grid_n;
    Eigen::MatrixXcd g = synth_grid(all, n);
    const double dA = (ens.side / n) * (ens.side / n);
    g_l2_sq = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g_l2_sq += std::norm(g(i, j)) * dA;
    arcs_l2_sq = 0.0;
    for (const auto& arc : ens.arcs)
        for (const auto& p : arc) arcs_l2_sq += std::norm(p.amp) * ens.side * ens.side;
}

double decoupling_ratio(const ArcFunctionEnsemble& ens) {
    std::vector<ArcFunctionEnsemble::FreqPoint> all;
    for (const auto& arc : ens.arcs) all.insert(all.end(), arc.begin(), arc.end());
    if (all.empty()) throw std::invalid_argument("decoupling_ratio: empty ensemble");
    const int n = ens.grid_n;
    Eigen::MatrixXcd g = synth_grid(all, n);
    const double num = weighted_l6(g, ens.side);

    if (ens.active_arcs() == 1) return num / num;  // g coincides with its only arc

    double den_sq = 0.0;
    for (const auto& arc : ens.arcs) {
        if (arc.empty()) continue;
        double nrm;
        if (n <= 512) {
            nrm = weighted_l6(synth_grid(arc, n), ens.side);
        } else {
            // band-limited envelope on a reduced grid: |g_iota| = |envelope|
            long k1lo = arc[0].k1, k1hi = arc[0].k1, k2lo = arc[0].k2, k2hi = arc[0].k2;
            for (const auto& p : arc) {
                k1lo = std::min(k1lo, p.k1);
                k1hi = std::max(k1hi, p.k1);
                k2lo = std::min(k2lo, p.k2);
                k2hi = std::max(k2hi, p.k2);
            }
            const long c1 = (k1lo + k1hi) / 2, c2 = (k2lo + k2hi) / 2;
            const long dev = std::max(k1hi - k1lo, k2hi - k2lo) / 2 + 2;
            int nn = static_cast<int>(next_pow2(static_cast<std::size_t>(13 * dev)));
            nn = std::clamp(nn, 64, n);
            nrm = weighted_l6(synth_grid(arc, nn, c1, c2), ens.side);
        }
        den_sq += nrm * nrm;
        if (den_sq == 0.0) continue;
    }
    if (den_sq <= 0.0) throw std::runtime_error("decoupling_ratio: zero denominator");
    return num / std::sqrt(den_sq);
}

GrowthFit decoupling_growth_fit(const std::vector<double>& delta_list, int trials,
                                std::uint64_t seed) {
    if (delta_list.size() < 2) throw std::invalid_argument("growth fit: need >= 2 deltas");
    GrowthFit out;
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t di = 0; di < delta_list.size(); ++di) {
        double mx = 0.0;
        for (int tr = 0; tr < trials; ++tr) {
            const std::uint64_t s = substream_seed(seed, di * 1000003ULL + static_cast<std::uint64_t>(tr));
            const double r = decoupling_ratio(synthesize_ensemble(delta_list[di], s));
            mx = std::max(mx, r);
        }
        out.max_ratio.push_back(mx);
        pairs.emplace_back(1.0 / delta_list[di], mx);
    }
    const PowerLawFit fit = fit_power_law(pairs, true);
    out.slope = fit.slope;
    out.intercept = fit.intercept;
    out.r2 = fit.r2;
    return out;
}

} // namespace wpl
