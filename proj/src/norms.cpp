#include "wpl/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace wpl {

double lp_norm_ball(const SpaceTimeField& field, double p, double R) {
    if (p < 1.0) throw std::invalid_argument("lp_norm_ball: p must be >= 1");
    const SpaceTimeGrid& g = field.grid;
    if (g.x_half < R || g.t_half < R)
        throw std::invalid_argument("lp_norm_ball: grid does not cover B_R");
    const double dA = g.dx() * g.dt();
    double acc = 0.0;
    for (Eigen::Index jt = 0; jt < g.nt; ++jt) {
        const double t = g.t(jt);
        if (std::abs(t) > R) continue;
        const double xmax = std::sqrt(std::max(0.0, R * R - t * t));
        for (Eigen::Index ix = 0; ix < g.nx; ++ix) {
            const double x = g.x(ix);
            if (std::abs(x) > xmax) continue;
            acc += std::pow(std::abs(field.values(ix, jt)), p);
        }
    }
    return std::pow(acc * dA, 1.0 / p);
}

double weighted_l2_band(const SpaceTimeField& field, double R) {
    const SpaceTimeGrid& g = field.grid;
    if (g.t_half < R) throw std::invalid_argument("weighted_l2_band: band not covered");
    const double dA = g.dx() * g.dt();
    double acc = 0.0;
    for (Eigen::Index jt = 0; jt < g.nt; ++jt) {
        if (std::abs(g.t(jt)) > R) continue;
        for (Eigen::Index ix = 0; ix < g.nx; ++ix) acc += std::norm(field.values(ix, jt));
    }
    return std::sqrt(acc * dA);
}

double l2_norm_profile(const FrequencyProfile& f) { return f.l2_norm(); }

BallNormAccumulator::BallNormAccumulator(const SpaceTimeGrid& g, double p_, double R_)
    : grid(g), p(p_), R(R_) {
    if (p < 1.0) throw std::invalid_argument("BallNormAccumulator: p must be >= 1");
    if (g.x_half < R || g.t_half < R)
        throw std::invalid_argument("BallNormAccumulator: grid does not cover B_R");
}

void BallNormAccumulator::add_slice(Eigen::Index it, const Eigen::VectorXcd& column) {
    const double t = grid.t(it);
    const double dA = grid.dx() * grid.dt();
    const bool in_band = std::abs(t) <= R;
    const double xmax = in_band ? std::sqrt(std::max(0.0, R * R - t * t)) : -1.0;
    for (Eigen::Index ix = 0; ix < grid.nx; ++ix) {
        const double a = std::abs(column[ix]);
        sup_abs = std::max(sup_abs, a);
        if (!in_band) continue;
        sum2_band += a * a * dA;
        if (std::abs(grid.x(ix)) <= xmax) sum_p += std::pow(a, p) * dA;
    }
}

double BallNormAccumulator::lp_ball() const { return std::pow(sum_p, 1.0 / p); }
double BallNormAccumulator::l2_band() const { return std::sqrt(sum2_band); }

} // namespace wpl
