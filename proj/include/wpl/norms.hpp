#pragma once

#include "wpl/core.hpp"

namespace wpl {

// L^p norm over the disk B_R: (sum over cell centers inside the disk of
// |value|^p dx dt)^{1/p}. pre: p >= 1, grid covers B_R.
double lp_norm_ball(const SpaceTimeField& field, double p, double R);

// L^2 over the grid's full x-range and the time band |t| <= R. With the
// artifact's transform convention the conserved-band identity reads
// ||Ef||_{L2(x, |t|<=R)} = (2 pi)^{1/2} (2R)^{1/2} ||f||_2 for infinite
// x-range, so only <= is asserted against that bound.
double weighted_l2_band(const SpaceTimeField& field, double R);

// trapezoid L^2 norm of a profile
double l2_norm_profile(const FrequencyProfile& f);

// Streaming accumulators so sweeps can compute norms slice by slice.
struct BallNormAccumulator {
    SpaceTimeGrid grid;
    double p = 2.0;
    double R = 0.0;
    double sum_p = 0.0;        // sum |v|^p dA over the disk
    double sum2_band = 0.0;    // sum |v|^2 dA over |t| <= R, all x
    double sup_abs = 0.0;      // max |v| over the whole grid

    BallNormAccumulator(const SpaceTimeGrid& g, double p_, double R_);
    void add_slice(Eigen::Index it, const Eigen::VectorXcd& column);
    double lp_ball() const;
    double l2_band() const;
};

} // namespace wpl
