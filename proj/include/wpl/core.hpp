#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace wpl {

using Complex = std::complex<double>;

// Sampled complex function on a uniform grid over [omega_min, omega_max],
// endpoints included. The decomposition input lives on [-1, 1]; wave-packet
// pieces may carry a slightly larger window, so the range is stored.
struct FrequencyProfile {
    double omega_min = -1.0;
    double omega_max = 1.0;
    Eigen::VectorXcd samples;
    std::string label;

    Eigen::Index size() const { return samples.size(); }
    double spacing() const { return (omega_max - omega_min) / static_cast<double>(samples.size() - 1); }
    double omega(Eigen::Index j) const { return omega_min + spacing() * static_cast<double>(j); }

    // trapezoid quadrature weight of sample j
    double weight(Eigen::Index j) const {
        const double h = spacing();
        return (j == 0 || j == samples.size() - 1) ? 0.5 * h : h;
    }

    double l1_norm() const;
    double l2_norm() const;
};

// pre: length is a power of two >= 16, values finite, domain [-1, 1].
FrequencyProfile make_profile(const Eigen::VectorXcd& values, const std::string& label = "");

// Internal constructor for profiles on a non-default window (wave packets near
// the edge of [-1, 1] overhang it). Same validation minus the domain pin.
FrequencyProfile make_profile_on(double omega_min, double omega_max,
                                 const Eigen::VectorXcd& values, const std::string& label = "");

struct SpaceTimeGrid {
    double R = 0.0;     // ball radius the grid is meant to cover
    Eigen::Index nx = 0, nt = 0;
    double x_half = 0.0;  // x range is [-x_half, x_half]
    double t_half = 0.0;  // t range is [-t_half, t_half]

    double dx() const { return 2.0 * x_half / static_cast<double>(nx - 1); }
    double dt() const { return 2.0 * t_half / static_cast<double>(nt - 1); }
    double x(Eigen::Index i) const { return -x_half + dx() * static_cast<double>(i); }
    double t(Eigen::Index j) const { return -t_half + dt() * static_cast<double>(j); }
};

// validates nx, nt >= 2, positive spacings, x_half/t_half >= R
SpaceTimeGrid make_grid(double R, Eigen::Index nx, Eigen::Index nt,
                        double x_half = 0.0, double t_half = 0.0);

// Smallest admissible profile sample count for evaluating fields on this grid.
// The phase omega^2 t + omega x has omega-derivative bounded by |x| + 2|t|.
double nyquist_guard_min_samples(const SpaceTimeGrid& g);
double nyquist_guard_min_samples(double x_abs, double t_abs);
bool nyquist_guard_ok(Eigen::Index samples, const SpaceTimeGrid& g);

struct SpaceTimeField {
    SpaceTimeGrid grid;
    Eigen::MatrixXcd values;  // nx rows, nt columns

    Complex at(Eigen::Index ix, Eigen::Index it) const { return values(ix, it); }
};

SpaceTimeField make_field(const SpaceTimeGrid& grid, const Eigen::MatrixXcd& values);

// Space-time tube |x - v - theta t| <= w sqrt(R). theta and v sit on the
// R^{-1/2} and R^{1/2} lattices; membership of the lattice is validated to
// 1e-9 relative tolerance.
struct Tube {
    double theta = 0.0;
    double v = 0.0;
    double scale = 0.0;            // R
    double width_multiplier = 1.0; // w = 1 is RT; w = R^delta/2... enlargements

    double core_distance(double x, double t) const { return std::abs(x - v - theta * t); }
};

Tube make_tube(double theta, double v, double R, double width_multiplier = 1.0);
bool tube_contains(const Tube& tube, double x, double t);

} // namespace wpl
