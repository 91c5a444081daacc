#include "wpl/core.hpp"
#include "wpl/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace wpl {

namespace {

void check_finite(const Eigen::VectorXcd& values, const char* who) {
    for (Eigen::Index j = 0; j < values.size(); ++j) {
        const Complex z = values[j];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument(std::string(who) + ": non-finite sample");
    }
}

} // namespace

double FrequencyProfile::l1_norm() const {
    double s = 0.0;
    for (Eigen::Index j = 0; j < samples.size(); ++j) s += weight(j) * std::abs(samples[j]);
    return s;
}

double FrequencyProfile::l2_norm() const {
    double s = 0.0;
    for (Eigen::Index j = 0; j < samples.size(); ++j) s += weight(j) * std::norm(samples[j]);
    return std::sqrt(s);
}

FrequencyProfile make_profile(const Eigen::VectorXcd& values, const std::string& label) {
    if (values.size() < 16 || !is_pow2(static_cast<std::size_t>(values.size())))
        throw std::invalid_argument("make_profile: length must be a power of two >= 16");
    check_finite(values, "make_profile");
    FrequencyProfile p;
    p.samples = values;
    p.label = label;
    return p;
}

FrequencyProfile make_profile_on(double omega_min, double omega_max,
                                 const Eigen::VectorXcd& values, const std::string& label) {
    if (!(omega_max > omega_min)) throw std::invalid_argument("make_profile_on: empty window");
    if (values.size() < 2) throw std::invalid_argument("make_profile_on: need >= 2 samples");
    check_finite(values, "make_profile_on");
    FrequencyProfile p;
    p.omega_min = omega_min;
    p.omega_max = omega_max;
    p.samples = values;
    p.label = label;
    return p;
}

SpaceTimeGrid make_grid(double R, Eigen::Index nx, Eigen::Index nt, double x_half, double t_half) {
    if (!(R > 0.0)) throw std::invalid_argument("make_grid: R must be positive");
    if (nx < 2 || nt < 2) throw std::invalid_argument("make_grid: nx, nt must be >= 2");
    if (x_half == 0.0) x_half = R;
    if (t_half == 0.0) t_half = R;
    if (x_half < R || t_half < R)
        throw std::invalid_argument("make_grid: ranges must cover the ball radius");
    SpaceTimeGrid g{R, nx, nt, x_half, t_half};
    if (!(g.dx() > 0.0) || !(g.dt() > 0.0)) throw std::invalid_argument("make_grid: bad spacing");
    return g;
}

double nyquist_guard_min_samples(double x_abs, double t_abs) {
    return 4.0 * (x_abs + 2.0 * t_abs) / 3.14159265358979323846;
}

double nyquist_guard_min_samples(const SpaceTimeGrid& g) {
    return nyquist_guard_min_samples(g.x_half, g.t_half);
}

bool nyquist_guard_ok(Eigen::Index samples, const SpaceTimeGrid& g) {
    return static_cast<double>(samples) >= nyquist_guard_min_samples(g);
}

SpaceTimeField make_field(const SpaceTimeGrid& grid, const Eigen::MatrixXcd& values) {
    if (values.rows() != grid.nx || values.cols() != grid.nt)
        throw std::invalid_argument("make_field: dimensions do not match grid");
    if (!values.allFinite()) throw std::invalid_argument("make_field: non-finite value");
    SpaceTimeField f;
    f.grid = grid;
    f.values = values;
    return f;
}

Tube make_tube(double theta, double v, double R, double width_multiplier) {
    if (!(R > 0.0)) throw std::invalid_argument("make_tube: R must be positive");
    if (width_multiplier < 1.0) throw std::invalid_argument("make_tube: width multiplier < 1");
    const double rs = std::sqrt(R);
    const double ktheta = theta * rs;      // should be an integer
    const double kv = v / rs;              // should be an integer
    const double tol = 1e-9;
    if (std::abs(ktheta - std::round(ktheta)) > tol * std::max(1.0, std::abs(ktheta)))
        throw std::invalid_argument("make_tube: theta not on the R^{-1/2} lattice");
    if (std::abs(theta) > 1.0 + tol) throw std::invalid_argument("make_tube: |theta| > 1");
    if (std::abs(kv - std::round(kv)) > tol * std::max(1.0, std::abs(kv)))
        throw std::invalid_argument("make_tube: v not on the R^{1/2} lattice");
    return Tube{theta, v, R, width_multiplier};
}

bool tube_contains(const Tube& tube, double x, double t) {
    return tube.core_distance(x, t) <= tube.width_multiplier * std::sqrt(tube.scale);
}

} // namespace wpl
