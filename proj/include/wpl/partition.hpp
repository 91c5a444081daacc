#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace wpl {

struct WeightedPoint {
    double x = 0.0, t = 0.0, w = 0.0;
};

struct WeightedPoints {
    std::vector<WeightedPoint> pts;
    double total_weight() const;
};

WeightedPoints make_weighted_points(std::vector<WeightedPoint> pts);

// Bivariate polynomial in shifted-scaled coordinates: evaluation maps (x, t)
// to ((x - cx)/s, (t - ct)/s) first, which keeps optimization conditioned
// without expanding the composition.
struct Poly2 {
    int degree = 0;
    Eigen::VectorXd coeffs;  // monomials x^i t^j with i + j <= degree, lex order
    double cx = 0.0, ct = 0.0, s = 1.0;

    double eval(double x, double t) const;
    void gradient(double x, double t, double& gx, double& gt) const;
    // sum of |coeff * monomial| at the point; the ON_BOUNDARY scale reference
    double term_scale(double x, double t) const;
    static int coeff_count(int degree) { return (degree + 1) * (degree + 2) / 2; }
};

constexpr int kOnBoundary = -1;

struct PartitionResult {
    std::vector<Poly2> bisectors;
    int product_degree = 0;                       // sum of bisector degrees, <= D
    std::map<std::vector<int>, int> cells;        // sign vector (+1/-1 per bisector) -> cell id
    std::vector<double> cell_weights;             // by cell id (all sign vectors)
    double boundary_weight = 0.0;
    double imbalance = 0.0;                       // max |w_i - mean| / mean over sign cells

    int cell_count() const { return static_cast<int>(cell_weights.size()); }
};

struct PartitionOptions {
    double tolerance = 0.1;        // admissible imbalance
    std::uint64_t seed = 1;
    int restarts = 8;
    int nm_iterations = 4000;
};

// Degree-D polynomial partition by iterated simultaneous bisection. Bisector
// degrees follow the minimal schedule d(d+3)/2 >= 2^{k-1} under the budget
// sum d_k <= D, so D in {1, 2, 4} yields 2, 4, 8 cells. Steps with one or two
// masses are cut by exact weighted-median / rotating ham-sandwich search;
// deeper steps run an annealed Nelder-Mead on the worst cell imbalance.
// Throws when the best found imbalance exceeds the tolerance.
PartitionResult build_partition(const WeightedPoints& pts, int D,
                                const PartitionOptions& opts = {});

// Sign vector cell lookup; kOnBoundary when any bisector is within
// 1e-12 * term scale of zero at the point.
int cell_of(const PartitionResult& partition, double x, double t);

struct LineIncidence {
    int distinct_cells = 0;
    bool degenerate = false;  // >= 10% of samples on a boundary
};

// Distinct cells met by the line x = v + theta t, sampled at 4096 points with
// t across [-t_window, t_window]. Guaranteed <= product_degree + 1.
LineIncidence line_cell_incidences(const PartitionResult& partition, double theta, double v,
                                   double t_window);

struct AreaEstimate {
    double area = 0.0;
    double stderr_ = 0.0;
    long redraws = 0;
};

// Monte Carlo area of {q in B_R : dist(q, Z(poly)) <= rho}. Distance by
// gradient-normalized Newton projection onto the zero set plus tangential
// refinement. pre: rho <= R, n_samples >= 1e4.
AreaEstimate neighborhood_area(const Poly2& poly, double rho, double R, long n_samples,
                               std::uint64_t seed);

} // namespace wpl
