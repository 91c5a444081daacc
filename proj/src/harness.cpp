#include "wpl/harness.hpp"
#include "wpl/extension.hpp"
#include "wpl/fft.hpp"
#include "wpl/norms.hpp"
#include "wpl/profiles.hpp"
#include "wpl/threads.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wpl {

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& pairs, bool log_log) {
    if (pairs.size() < 2) throw std::invalid_argument("fit_power_law: need >= 2 pairs");
    std::vector<double> xs, ys;
    for (const auto& [x, y] : pairs) {
        if (log_log && (!(x > 0.0) || !(y > 0.0)))
            throw std::invalid_argument("fit_power_law: log-log requires positive values");
        xs.push_back(log_log ? std::log(x) : x);
        ys.push_back(log_log ? std::log(y) : y);
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    const double cxy = sxy - sx * sy / n;
    PowerLawFit fit;
    fit.slope = cxy / vx;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.r2 = (vy > 0.0) ? (cxy * cxy) / (vx * vy) : 1.0;
    return fit;
}

Family family_from_name(const std::string& name) {
    if (name == "f0") return Family::F0;
    if (name == "f1") return Family::F1;
    if (name == "many") return Family::Many;
    if (name == "bundle") return Family::Bundle;
    if (name == "star") return Family::Star;
    throw std::invalid_argument("unknown family '" + name + "'");
}

std::string family_name(Family f) {
    switch (f) {
        case Family::F0: return "f0";
        case Family::F1: return "f1";
        case Family::Many: return "many";
        case Family::Bundle: return "bundle";
        case Family::Star: return "star";
    }
    return "?";
}

FrequencyProfile build_family(Family family, double R, const NRule& rule, double* N_out) {
    const Eigen::Index ball_samples = samples_for_ball(R);
    double N = 0.0;
    FrequencyProfile f;
    switch (family) {
        case Family::F0:
            f = make_f0(std::max<Eigen::Index>(4096, ball_samples));
            break;
        case Family::F1:
            f = make_f1(R, std::max<Eigen::Index>(4096, ball_samples));
            break;
        case Family::Many: {
            const double U = rule.sqrt_R ? 0.5 / std::sqrt(R) : 0.5 / std::sqrt(R);
            N = U;
            f = make_many(U, std::max<Eigen::Index>(
                                 static_cast<Eigen::Index>(next_pow2(static_cast<std::size_t>(64.0 / U))),
                                 ball_samples));
            break;
        }
        case Family::Bundle: {
            const int n = rule.sqrt_R ? static_cast<int>(std::lround(std::sqrt(R))) - 1
                                      : rule.constant;
            N = n;
            const double ramp = 0.5 / (std::sqrt(R) * n);
            const Eigen::Index fam =
                static_cast<Eigen::Index>(next_pow2(static_cast<std::size_t>(8.0 / ramp)));
            f = make_bundle(R, n, std::max(fam, ball_samples));
            break;
        }
        case Family::Star: {
            const int n = rule.sqrt_R ? static_cast<int>(std::lround(std::sqrt(R))) - 2
                                      : rule.constant;
            N = n;
            f = make_star(R, n, std::max<Eigen::Index>(4096, ball_samples));
            break;
        }
    }
    if (N_out) *N_out = N;
    return f;
}

SpaceTimeGrid sweep_grid(double R, Eigen::Index budget) {
    // spacing ~1 resolves the O(1)-scale coherence structures of the families;
    // identical spacing across R keeps discretization bias out of the slopes
    Eigen::Index n = static_cast<Eigen::Index>(next_pow2(static_cast<std::size_t>(2.0 * R)));
    while (n * n > budget) n /= 2;
    return make_grid(R, n, n);
}

SweepReport run_sweep(const SweepConfig& cfg) {
    if (cfg.R_list.size() < 3) throw std::invalid_argument("run_sweep: need >= 3 R values");
    for (std::size_t i = 0; i + 1 < cfg.R_list.size(); ++i)
        if (!(cfg.R_list[i] < cfg.R_list[i + 1]))
            throw std::invalid_argument("run_sweep: R_list must ascend");
    if (cfg.R_list.front() < 256.0) throw std::invalid_argument("run_sweep: R must be >= 256");

    SweepReport report;
    report.rows.resize(cfg.R_list.size());
    // rows are independent; they fill by index so the report is identical for
    // any thread count
    parallel_for(cfg.R_list.size(), [&](std::size_t ri) {
        const double R = cfg.R_list[ri];
        SweepRow row;
        row.family = family_name(cfg.family);
        row.R = R;
        row.p = cfg.p;
        try {
            double N = 0.0;
            FrequencyProfile f = build_family(cfg.family, R, cfg.n_rule, &N);
            row.N = N;
            row.l2_norm = f.l2_norm();
            row.l1_norm = f.l1_norm();

            const SpaceTimeGrid grid = sweep_grid(R, cfg.grid_budget);
            BallNormAccumulator acc(grid, cfg.p, R);
            for_each_time_slice(f, grid, [&](Eigen::Index it, const Eigen::VectorXcd& col) {
                acc.add_slice(it, col);
            });
            row.lp_norm = acc.lp_ball();
            row.sup_abs = acc.sup_abs;
            row.band_l2 = acc.l2_band();

            Decomposition d = decompose(f, R);
            row.S = d.S;
            row.ratio = row.lp_norm /
                        (std::pow(R, cfg.claimed.alpha) * std::pow(row.S, cfg.claimed.beta) *
                         row.l2_norm);

            // hard inequalities re-asserted per row
            const double band_bound =
                std::sqrt(2.0 * 3.14159265358979323846) * std::sqrt(2.0 * R) * row.l2_norm * 1.01;
            if (row.band_l2 > band_bound) row.error = "band bound violated";
            if (row.sup_abs > row.l1_norm * (1.0 + 1e-6))
                row.error += std::string(row.error.empty() ? "" : "; ") + "sup bound violated";
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        report.rows[ri] = std::move(row);
    }, cfg.threads);

    std::vector<std::pair<double, double>> lp_pairs, ratio_pairs;
    for (const SweepRow& row : report.rows) {
        if (!row.error.empty()) continue;
        lp_pairs.emplace_back(row.R, row.lp_norm);
        ratio_pairs.emplace_back(row.R, row.ratio);
    }
    if (lp_pairs.size() >= 2) {
        report.lp_fit = fit_power_law(lp_pairs, true);
        report.ratio_fit = fit_power_law(ratio_pairs, true);
    }
    return report;
}

std::string sweep_csv(const SweepReport& report) {
    std::ostringstream os;
    os << "family,R,N,p,lp_norm,l2_norm,S,ratio\n";
    os.precision(17);
    for (const SweepRow& r : report.rows) {
        os << r.family << ',' << r.R << ',' << r.N << ',' << r.p << ',' << r.lp_norm << ','
           << r.l2_norm << ',' << r.S << ',' << r.ratio << '\n';
    }
    return os.str();
}

std::vector<FixedInequalityRow> verify_fixed_inequalities(const std::vector<Family>& corpus,
                                                          const std::vector<double>& R_list,
                                                          double p, unsigned threads) {
    (void)threads;
    std::vector<FixedInequalityRow> rows;
    for (Family fam : corpus) {
        for (double R : R_list) {
            FixedInequalityRow row;
            row.family = family_name(fam);
            row.R = R;
            row.p = p;
            double N = 0.0;
            FrequencyProfile f = build_family(fam, R, NRule{true, 1}, &N);
            const double l2 = f.l2_norm();
            if (l2 == 0.0) continue;  // degenerate corpus entries are skipped
            const SpaceTimeGrid grid = sweep_grid(R);
            BallNormAccumulator acc(grid, p, R);
            for_each_time_slice(f, grid, [&](Eigen::Index it, const Eigen::VectorXcd& col) {
                acc.add_slice(it, col);
            });
            const double band_bound =
                std::sqrt(2.0 * 3.14159265358979323846) * std::sqrt(2.0 * R) * l2 * 1.01;
            row.band_ok = acc.l2_band() <= band_bound;
            row.sup_ok = acc.sup_abs <= f.l1_norm() * (1.0 + 1e-6);
            row.trf_ratio = acc.lp_ball() / (std::pow(R, 3.0 / (2.0 * p) - 0.25) * l2);
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace wpl
