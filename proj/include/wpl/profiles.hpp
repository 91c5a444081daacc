#pragma once

#include "wpl/core.hpp"

namespace wpl {

// Bump with a flat plateau and squared-cosine ramps down to the support edge.
// Star bumps use complementary ramps (antisymmetric about the half-lattice
// point), which makes neighboring translates telescope to exactly 1.
struct BumpSpec {
    double center = 0.0;
    double plateau_halfwidth = 0.0;
    double support_halfwidth = 0.0;
    bool reflection_symmetry = false;

    double eval(double omega) const;
};

// Unit-scale bump: 1 on [-1/2, 1/2], supported in [-1, 1].
FrequencyProfile make_f0(Eigen::Index samples = 4096);

// Single-packet profile: 1 on [-R^{-1/2}, R^{-1/2}], supported in
// [-2 R^{-1/2}, 2 R^{-1/2}].
FrequencyProfile make_f1(double R, Eigen::Index samples = 0);

// Narrow single bump: 1 on [-U/2, U/2], supported in [-U, U].
FrequencyProfile make_many(double U, Eigen::Index samples = 0);

// 2N+1 narrow bumps on the R^{-1/2} lattice, each with plateau halfwidth
// R^{-1/2} N^{-1} / 2 and support halfwidth R^{-1/2} N^{-1}.
FrequencyProfile make_bundle(double R, int N, Eigen::Index samples = 0);

// 2N+1 unit-lattice-width bumps whose overlaps sum to exactly 1 on the middle
// interval [-(N + 1/4) R^{-1/2}, (N + 1/4) R^{-1/2}].
FrequencyProfile make_star(double R, int N, Eigen::Index samples = 0);

// Sample count adequate for evaluating a profile's field on a grid covering
// B_R (x_half = t_half = R), with margin over the Nyquist guard.
Eigen::Index samples_for_ball(double R, double oversample = 2.0);

} // namespace wpl
