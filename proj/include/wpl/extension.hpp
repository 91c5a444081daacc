#pragma once

#include "wpl/core.hpp"

#include <functional>

namespace wpl {

// Ef(x, t) = int_{[-1,1]} exp(i (omega^2 t + omega x)) f(omega) d omega,
// trapezoid rule on f's grid. Errors if f's sample count violates the
// Nyquist guard for the requested point.
Complex evaluate_extension(const FrequencyProfile& f, double x, double t);

// Same quadrature realized per t-slice by a zero-padded chirp-Z transform
// (Bluestein), sampling exactly at the grid x-values. Agrees with
// evaluate_extension to rounding error.
SpaceTimeField evaluate_field(const FrequencyProfile& f, const SpaceTimeGrid& grid,
                              Eigen::Index points_cap = (Eigen::Index{1} << 26),
                              unsigned threads = 1);

// Streaming form: calls visit(it, column of nx values) for each t index in
// order, without materializing the nx x nt matrix. Norm sweeps at large R use
// this to stay inside the memory budget.
void for_each_time_slice(const FrequencyProfile& f, const SpaceTimeGrid& grid,
                         const std::function<void(Eigen::Index, const Eigen::VectorXcd&)>& visit);

// Smooth spatial cutoff: eta has eta-hat nonnegative, supported in the unit
// ball and constant 1 inside B_{0.99}; eta_R(x, t) = eta(x/R, t/R). The
// constructed window is radial, so it is tabulated as a 1-D profile.
struct EtaWindow {
    double R = 1.0;
    SpaceTimeField field;          // samples of eta_R on the construction grid
    double center_value = 0.0;     // eta_R(0, 0)
    double c0 = 0.0;               // min Re eta_R over B_R (positive on success)
    double C4 = 0.0;               // measured constant in |eta_R| <= C4 (1 + (|x|+|t|)/R)^{-4}
    int decay_exponent_checked = 4;

    double value(double x, double t) const;  // radial table lookup
};

// pre: grid covers at least B_{2R}. Builds eta-hat as the indicator of
// B_{0.995} mollified at radius 0.005, inverse-transforms via the radial
// (Hankel) integral, rescales to eta_R, and records c0 / C4 from samples.
EtaWindow make_eta(double R, const SpaceTimeGrid& grid);

// Radial profile of the unscaled eta at |z| = s (shared static table).
double eta_radial(double s);
// eta-hat radial profile (1 on [0, 0.99], 0 beyond 1).
double eta_hat_radial(double r);

} // namespace wpl
