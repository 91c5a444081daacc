#include "wpl/partition.hpp"
#include "wpl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace wpl {

namespace {

constexpr double kPi = 3.14159265358979323846;

} // namespace

double WeightedPoints::total_weight() const {
    double s = 0.0;
    for (const auto& p : pts) s += p.w;
    return s;
}

WeightedPoints make_weighted_points(std::vector<WeightedPoint> pts) {
    for (const auto& p : pts) {
        if (!(p.w >= 0.0) || !std::isfinite(p.x) || !std::isfinite(p.t) || !std::isfinite(p.w))
            throw std::invalid_argument("weighted points: weights must be finite and >= 0");
    }
    WeightedPoints w{std::move(pts)};
    if (!(w.total_weight() > 0.0))
        throw std::invalid_argument("weighted points: total weight must be positive");
    return w;
}

double Poly2::eval(double x, double t) const {
    const double u = (x - cx) / s, w = (t - ct) / s;
    double acc = 0.0;
    int idx = 0;
    for (int i = 0; i <= degree; ++i) {
        for (int j = 0; j <= degree - i; ++j) {
            acc += coeffs[idx++] * std::pow(u, i) * std::pow(w, j);
        }
    }
    return acc;
}

void Poly2::gradient(double x, double t, double& gx, double& gt) const {
    const double u = (x - cx) / s, w = (t - ct) / s;
    gx = 0.0;
    gt = 0.0;
    int idx = 0;
    for (int i = 0; i <= degree; ++i) {
        for (int j = 0; j <= degree - i; ++j) {
            const double c = coeffs[idx++];
            if (i > 0) gx += c * i * std::pow(u, i - 1) * std::pow(w, j);
            if (j > 0) gt += c * std::pow(u, i) * j * std::pow(w, j - 1);
        }
    }
    gx /= s;
    gt /= s;
}

double Poly2::term_scale(double x, double t) const {
    const double u = (x - cx) / s, w = (t - ct) / s;
    double acc = 0.0;
    int idx = 0;
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; j <= degree - i; ++j)
            acc += std::abs(coeffs[idx++] * std::pow(u, i) * std::pow(w, j));
    return acc;
}

namespace {

// degree schedule: minimal d with d(d+3)/2 >= 2^{k-1}, greedy under sum <= D
std::vector<int> bisector_degrees(int D) {
    std::vector<int> degrees;
    int total = 0;
    for (int k = 1;; ++k) {
        const double need = std::pow(2.0, k - 1);
        int d = 1;
        while (d * (d + 3) / 2.0 < need) ++d;
        if (total + d > D) break;
        degrees.push_back(d);
        total += d;
    }
    return degrees;
}

struct StepContext {
    const WeightedPoints* pts;
    std::vector<int> cell_id;  // current cell of each point
    int ncells = 1;
    double cx = 0.0, ct = 0.0, s = 1.0;
};

// worst signed imbalance over current cells under a soft sign; soft = 0 gives
// the exact sign objective
double split_objective(const StepContext& ctx, const Poly2& poly, double soft) {
    const auto& pts = ctx.pts->pts;
    std::vector<double> plus(ctx.ncells, 0.0), tot(ctx.ncells, 0.0);
    // reference scale for the soft sign: mean |P| over points
    double ref = 0.0;
    std::vector<double> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        vals[i] = poly.eval(pts[i].x, pts[i].t);
        ref += std::abs(vals[i]);
    }
    ref = std::max(ref / static_cast<double>(pts.size()), 1e-300);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const int c = ctx.cell_id[i];
        const double sgn = soft > 0.0 ? std::tanh(vals[i] / (soft * ref))
                                      : (vals[i] > 0.0 ? 1.0 : (vals[i] < 0.0 ? -1.0 : 0.0));
        plus[c] += pts[i].w * sgn;
        tot[c] += pts[i].w;
    }
    double worst = 0.0;
    for (int c = 0; c < ctx.ncells; ++c)
        if (tot[c] > 0.0) worst = std::max(worst, std::abs(plus[c]) / tot[c]);
    return worst;
}

// exact bisection of one weighted cell along a direction: offset between
// adjacent projections nearest the weighted median
double median_offset(const std::vector<double>& proj, const std::vector<double>& wgt) {
    std::vector<std::size_t> order(proj.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return proj[a] < proj[b]; });
    double total = 0.0;
    for (double w : wgt) total += w;
    double run = 0.0;
    for (std::size_t r =  0; r + 1 < order.size(); ++r) {
        run += wgt[order[r]];
        if (run >= 0.5 * total) {
            return 0.5 * (proj[order[r]] + proj[order[r + 1]]);
        }
    }
    return proj.empty() ? 0.0 : proj[order.back()] + 1.0;
}

Poly2 line_poly(double angle, double offset, const StepContext& ctx) {
    Poly2 p;
    p.degree = 1;
    p.coeffs = Eigen::VectorXd::Zero(3);
    // monomial order for degree 1: 1, t, x
    p.cx = ctx.cx;
    p.ct = ctx.ct;
    p.s = ctx.s;
    p.coeffs[0] = -offset;
    p.coeffs[1] = std::sin(angle);
    p.coeffs[2] = std::cos(angle);
    return p;
}

// projection of the points onto a direction in normalized coordinates
std::vector<double> project(const StepContext& ctx, double angle) {
    const auto& pts = ctx.pts->pts;
    std::vector<double> proj(pts.size());
    const double c = std::cos(angle), sn = std::sin(angle);
    for (std::size_t i = 0; i < pts.size(); ++i)
        proj[i] = c * (pts[i].x - ctx.cx) / ctx.s + sn * (pts[i].t - ctx.ct) / ctx.s;
    return proj;
}

// single-mass cut: scan directions, take the first achieving the best cut
Poly2 cut_one_mass(const StepContext& ctx) {
    const auto& pts = ctx.pts->pts;
    Poly2 best;
    double best_obj = 1e300;
    for (int ia = 0; ia < 16; ++ia) {
        const double angle = kPi * ia / 16.0;
        auto proj = project(ctx, angle);
        std::vector<double> wgt(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) wgt[i] = pts[i].w;
        const double off = median_offset(proj, wgt);
        Poly2 cand = line_poly(angle, off, ctx);
        const double obj = split_objective(ctx, cand, 0.0);
        if (obj < best_obj - 1e-15) {
            best_obj = obj;
            best = cand;
        }
        if (best_obj == 0.0) break;
    }
    return best;
}

// two-mass ham sandwich: offset bisects cell 0 exactly; rotate until cell 1
// balances too
Poly2 cut_two_masses(const StepContext& ctx) {
    const auto& pts = ctx.pts->pts;
    auto eval_at = [&](double angle, double& offset) {
        auto proj = project(ctx, angle);
        std::vector<double> p0, w0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (ctx.cell_id[i] == 0) {
                p0.push_back(proj[i]);
                w0.push_back(pts[i].w);
            }
        offset = median_offset(p0, w0);
        double plus = 0.0, tot = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (ctx.cell_id[i] == 1) {
                plus += pts[i].w * (proj[i] > offset ? 1.0 : -1.0);
                tot += pts[i].w;
            }
        return tot > 0.0 ? plus / tot : 0.0;
    };
    const int nscan = 512;
    double best_angle = 0.0, best_off = 0.0, best_abs = 1e300;
    double prev_g = 0.0, prev_angle = 0.0;
    for (int ia = 0; ia <= nscan; ++ia) {
        const double angle = kPi * ia / nscan;
        double off;
        const double g = eval_at(angle, off);
        if (std::abs(g) < best_abs) {
            best_abs = std::abs(g);
            best_angle = angle;
            best_off = off;
        }
        if (ia > 0 && g * prev_g < 0.0) {
            double lo = prev_angle, hi = angle;
            double glo = prev_g;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                double omid;
                const double gmid = eval_at(mid, omid);
                if (std::abs(gmid) < best_abs) {
                    best_abs = std::abs(gmid);
                    best_angle = mid;
                    best_off = omid;
                }
                if (gmid == 0.0) break;
                if (gmid * glo < 0.0) hi = mid;
                else {
                    lo = mid;
                    glo = gmid;
                }
            }
        }
        prev_g = g;
        prev_angle = angle;
    }
    return line_poly(best_angle, best_off, ctx);
}

// Nelder-Mead minimization on R^n
Eigen::VectorXd nelder_mead(const std::function<double(const Eigen::VectorXd&)>& fn,
                            const Eigen::VectorXd& init, double scale, int iters) {
    const int n = static_cast<int>(init.size());
    std::vector<Eigen::VectorXd> simplex(n + 1, init);
    std::vector<double> val(n + 1);
    for (int i = 1; i <= n; ++i) simplex[i][i - 1] += scale;
    for (int i = 0; i <= n; ++i) val[i] = fn(simplex[i]);
    for (int it = 0; it < iters; ++it) {
        // order
        std::vector<int> ord(n + 1);
        for (int i = 0; i <= n; ++i) ord[i] = i;
        std::sort(ord.begin(), ord.end(), [&](int a, int b) { return val[a] < val[b]; });
        const int best = ord[0], worst = ord[n], second = ord[n - 1];
        if (val[worst] - val[best] < 1e-14) break;
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i <= n; ++i)
            if (i != worst) centroid += simplex[i];
        centroid /= n;
        Eigen::VectorXd refl = centroid + (centroid - simplex[worst]);
        double frefl = fn(refl);
        if (frefl < val[best]) {
            Eigen::VectorXd exp_ = centroid + 2.0 * (centroid - simplex[worst]);
            const double fexp = fn(exp_);
            if (fexp < frefl) {
                simplex[worst] = exp_;
                val[worst] = fexp;
            } else {
                simplex[worst] = refl;
                val[worst] = frefl;
            }
        } else if (frefl < val[second]) {
            simplex[worst] = refl;
            val[worst] = frefl;
        } else {
            Eigen::VectorXd con = centroid + 0.5 * (simplex[worst] - centroid);
            const double fcon = fn(con);
            if (fcon < val[worst]) {
                simplex[worst] = con;
                val[worst] = fcon;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
                    val[i] = fn(simplex[i]);
                }
            }
        }
    }
    int bi = 0;
    for (int i = 1; i <= n; ++i)
        if (val[i] < val[bi]) bi = i;
    return simplex[bi];
}

Poly2 coeffs_to_poly(const Eigen::VectorXd& c, int degree, const StepContext& ctx) {
    Poly2 p;
    p.degree = degree;
    p.coeffs = c / std::max(c.norm(), 1e-300);
    p.cx = ctx.cx;
    p.ct = ctx.ct;
    p.s = ctx.s;
    return p;
}

// general simultaneous bisection by annealed Nelder-Mead with restarts
Poly2 cut_many_masses(const StepContext& ctx, int degree, const PartitionOptions& opts,
                      std::uint64_t step_seed) {
    const int n = Poly2::coeff_count(degree);
    const auto& pts = ctx.pts->pts;

    std::vector<Eigen::VectorXd> inits;
    // heuristic: circle around the weighted centroid with the median radius
    if (degree == 2) {
        std::vector<double> r2s;
        for (const auto& p : pts) {
            const double u = (p.x - ctx.cx) / ctx.s, w = (p.t - ctx.ct) / ctx.s;
            r2s.push_back(u * u + w * w);
        }
        std::nth_element(r2s.begin(), r2s.begin() + r2s.size() / 2, r2s.end());
        const double med = r2s[r2s.size() / 2];
        // monomial order for degree 2: 1, t, t^2, x, x t, x^2
        Eigen::VectorXd c = Eigen::VectorXd::Zero(6);
        c[0] = -med;
        c[2] = 1.0;
        c[5] = 1.0;
        inits.push_back(c);
    }
    SplitMix64 rng(step_seed);
    while (static_cast<int>(inits.size()) < opts.restarts) {
        Eigen::VectorXd c(n);
        for (int i = 0; i < n; ++i) c[i] = rng.normal();
        inits.push_back(c);
    }

    Poly2 best;
    double best_obj = 1e300;
    for (std::size_t r = 0; r < inits.size(); ++r) {
        Eigen::VectorXd c = inits[r] / std::max(inits[r].norm(), 1e-300);
        for (double soft : {0.5, 0.1, 0.02}) {
            auto fn = [&](const Eigen::VectorXd& cc) {
                return split_objective(ctx, coeffs_to_poly(cc, degree, ctx), soft);
            };
            c = nelder_mead(fn, c, 0.4, opts.nm_iterations / 3);
            c /= std::max(c.norm(), 1e-300);
        }
        // deterministic random polish on the exact objective
        SplitMix64 prng(substream_seed(step_seed, 1000 + r));
        double cur = split_objective(ctx, coeffs_to_poly(c, degree, ctx), 0.0);
        for (int trial = 0; trial < 400; ++trial) {
            Eigen::VectorXd cand = c;
            const double amp = 0.05 * std::pow(0.5, trial / 100);
            for (int i = 0; i < n; ++i) cand[i] += amp * prng.normal();
            cand /= std::max(cand.norm(), 1e-300);
            const double obj = split_objective(ctx, coeffs_to_poly(cand, degree, ctx), 0.0);
            if (obj < cur) {
                cur = obj;
                c = cand;
            }
        }
        if (cur < best_obj) {
            best_obj = cur;
            best = coeffs_to_poly(c, degree, ctx);
        }
        if (best_obj < 1e-3) break;
    }
    return best;
}

} // namespace

PartitionResult build_partition(const WeightedPoints& pts, int D, const PartitionOptions& opts) {
    if (D < 1 || D > 8) throw std::invalid_argument("build_partition: D must be in [1, 8]");
    long positive = 0;
    for (const auto& p : pts.pts)
        if (p.w > 0.0) ++positive;
    const double need = std::pow(2.0, std::ceil(std::log2(std::max(1.0, static_cast<double>(D) * D))));
    if (static_cast<double>(positive) < need)
        throw std::invalid_argument("build_partition: too few points of positive weight");

    const std::vector<int> degrees = bisector_degrees(D);

    StepContext ctx;
    ctx.pts = &pts;
    ctx.cell_id.assign(pts.pts.size(), 0);
    ctx.ncells = 1;
    {
        double wsum = 0.0, mx = 0.0, mt = 0.0;
        for (const auto& p : pts.pts) {
            wsum += p.w;
            mx += p.w * p.x;
            mt += p.w * p.t;
        }
        ctx.cx = mx / wsum;
        ctx.ct = mt / wsum;
        double spread = 0.0;
        for (const auto& p : pts.pts)
            spread = std::max({spread, std::abs(p.x - ctx.cx), std::abs(p.t - ctx.ct)});
        ctx.s = std::max(spread, 1e-12);
    }

    PartitionResult result;
    for (std::size_t k = 0; k < degrees.size(); ++k) {
        Poly2 bis;
        if (degrees[k] == 1 && ctx.ncells == 1) bis = cut_one_mass(ctx);
        else if (degrees[k] == 1 && ctx.ncells == 2) bis = cut_two_masses(ctx);
        else bis = cut_many_masses(ctx, degrees[k], opts, substream_seed(opts.seed, k));
        result.bisectors.push_back(bis);
        result.product_degree += degrees[k];
        for (std::size_t i = 0; i < pts.pts.size(); ++i) {
            const double val = bis.eval(pts.pts[i].x, pts.pts[i].t);
            ctx.cell_id[i] = 2 * ctx.cell_id[i] + (val > 0.0 ? 1 : 0);
        }
        ctx.ncells *= 2;
    }

    // register all sign-vector cells
    const int m = static_cast<int>(result.bisectors.size());
    for (int id = 0; id < (1 << m); ++id) {
        std::vector<int> sv(m);
        for (int b = 0; b < m; ++b) sv[b] = ((id >> (m - 1 - b)) & 1) ? 1 : -1;
        result.cells[sv] = id;
    }
    result.cell_weights.assign(1 << m, 0.0);
    result.boundary_weight = 0.0;
    for (const auto& p : pts.pts) {
        const int c = cell_of(result, p.x, p.t);
        if (c == kOnBoundary) result.boundary_weight += p.w;
        else result.cell_weights[c] += p.w;
    }
    const double total = pts.total_weight();
    if (result.boundary_weight > 0.01 * total) {
        // deterministic jitter of the boundary mass
        SplitMix64 rng(substream_seed(opts.seed, 9999));
        result.cell_weights.assign(1 << m, 0.0);
        result.boundary_weight = 0.0;
        for (const auto& p : pts.pts) {
            double x = p.x, t = p.t;
            int c = cell_of(result, x, t);
            int guard = 0;
            while (c == kOnBoundary && guard++ < 20) {
                x += 1e-9 * ctx.s * (rng.next_double() - 0.5);
                t += 1e-9 * ctx.s * (rng.next_double() - 0.5);
                c = cell_of(result, x, t);
            }
            if (c == kOnBoundary) result.boundary_weight += p.w;
            else result.cell_weights[c] += p.w;
        }
    }

    const double mean = (total - result.boundary_weight) / static_cast<double>(1 << m);
    double imb = 0.0;
    for (double w : result.cell_weights) imb = std::max(imb, std::abs(w - mean) / mean);
    result.imbalance = imb;
    if (imb > opts.tolerance)
        throw std::runtime_error("build_partition: imbalance " + std::to_string(imb) +
                                 " exceeds tolerance " + std::to_string(opts.tolerance));
    return result;
}

int cell_of(const PartitionResult& partition, double x, double t) {
    const int m = static_cast<int>(partition.bisectors.size());
    int id = 0;
    for (int b = 0; b < m; ++b) {
        const Poly2& poly = partition.bisectors[b];
        const double val = poly.eval(x, t);
        if (std::abs(val) <= 1e-12 * poly.term_scale(x, t)) return kOnBoundary;
        id = 2 * id + (val > 0.0 ? 1 : 0);
    }
    return id;
}

LineIncidence line_cell_incidences(const PartitionResult& partition, double theta, double v,
                                   double t_window) {
    const int nsamples = 4096;
    std::vector<bool> seen(partition.cell_weights.size(), false);
    int boundary = 0, distinct = 0;
    for (int i = 0; i < nsamples; ++i) {
        const double t = -t_window + 2.0 * t_window * i / (nsamples - 1);
        const double x = v + theta * t;
        const int c = cell_of(partition, x, t);
        if (c == kOnBoundary) {
            ++boundary;
            continue;
        }
        if (!seen[static_cast<std::size_t>(c)]) {
            seen[static_cast<std::size_t>(c)] = true;
            ++distinct;
        }
    }
    LineIncidence out;
    out.distinct_cells = distinct;
    out.degenerate = boundary >= nsamples / 10;
    if (!out.degenerate && distinct > partition.product_degree + 1)
        throw std::runtime_error("line_cell_incidences: count exceeds product degree + 1");
    return out;
}

AreaEstimate neighborhood_area(const Poly2& poly, double rho, double R, long n_samples,
                               std::uint64_t seed) {
    if (!(rho > 0.0) || rho > R) throw std::invalid_argument("neighborhood_area: need 0 < rho <= R");
    if (n_samples < 10000) throw std::invalid_argument("neighborhood_area: need >= 1e4 samples");
    SplitMix64 rng(seed);
    long inside = 0, redraws = 0;

    auto distance_leq = [&](double qx, double qt, bool& ok) {
        // Newton projection onto the zero set, then tangential refinement
        double gx, gt;
        double y1 = qx, y2 = qt;
        poly.gradient(y1, y2, gx, gt);
        double g2 = gx * gx + gt * gt;
        const double scale0 = poly.term_scale(qx, qt) + 1e-300;
        if (g2 < 1e-24 * scale0 * scale0 / (R * R)) {
            ok = false;
            return false;
        }
        ok = true;
        const double f0 = std::abs(poly.eval(qx, qt));
        double first_order = f0 / std::sqrt(g2);
        if (first_order > 8.0 * rho) return false;
        for (int it = 0; it < 50; ++it) {
            const double f = poly.eval(y1, y2);
            poly.gradient(y1, y2, gx, gt);
            g2 = gx * gx + gt * gt;
            if (g2 < 1e-30) {
                ok = false;
                return false;
            }
            const double step = f / g2;
            y1 -= step * gx;
            y2 -= step * gt;
            if (std::abs(f) <= 1e-12 * (poly.term_scale(y1, y2) + 1e-300)) break;
        }
        // tangential slide toward q, staying on the curve
        for (int it = 0; it < 12; ++it) {
            poly.gradient(y1, y2, gx, gt);
            g2 = gx * gx + gt * gt;
            if (g2 < 1e-30) break;
            const double inv = 1.0 / std::sqrt(g2);
            const double nx1 = gx * inv, nt1 = gt * inv;
            const double ux = qx - y1, ut = qt - y2;
            const double tangx = ux - (ux * nx1 + ut * nt1) * nx1;
            const double tangt = ut - (ux * nx1 + ut * nt1) * nt1;
            if (tangx * tangx + tangt * tangt < 1e-24 * (rho * rho)) break;
            y1 += 0.8 * tangx;
            y2 += 0.8 * tangt;
            for (int nit = 0; nit < 4; ++nit) {
                const double f = poly.eval(y1, y2);
                poly.gradient(y1, y2, gx, gt);
                g2 = gx * gx + gt * gt;
                if (g2 < 1e-30) break;
                y1 -= f * gx / g2;
                y2 -= f * gt / g2;
            }
        }
        const double d = std::hypot(qx - y1, qt - y2);
        return d <= rho;
    };

    for (long i = 0; i < n_samples; ++i) {
        double qx, qt;
        bool ok = false;
        bool in = false;
        int attempts = 0;
        while (!ok) {
            do {
                qx = R * (2.0 * rng.next_double() - 1.0);
                qt = R * (2.0 * rng.next_double() - 1.0);
            } while (qx * qx + qt * qt > R * R);
            in = distance_leq(qx, qt, ok);
            if (!ok && ++attempts > 10)
                throw std::runtime_error("neighborhood_area: gradient vanished repeatedly");
            if (!ok) ++redraws;
        }
        if (in) ++inside;
    }
    const double p = static_cast<double>(inside) / static_cast<double>(n_samples);
    AreaEstimate est;
    est.area = kPi * R * R * p;
    est.stderr_ = kPi * R * R * std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(n_samples)));
    est.redraws = redraws;
    return est;
}

} // namespace wpl
