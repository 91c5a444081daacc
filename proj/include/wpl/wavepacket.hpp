#pragma once

#include "wpl/core.hpp"

#include <memory>
#include <vector>

namespace wpl {

// Schwartz-type window gamma with gamma-hat supported in [-1, 1] and
// sum_k gamma(y - k) = 1 (Poisson summation: gamma-hat(0) = 1 and gamma-hat
// vanishes at 2 pi k). gamma-hat is the indicator of [-0.9, 0.9] mollified at
// radius 0.1 with a C-infinity bump. gamma is even; the table covers [0, y_max].
struct GammaWindow {
    Eigen::VectorXd samples;   // gamma on a uniform y-grid starting at 0
    double step = 0.0;
    double y_max = 0.0;        // table extent
    double y_trunc = 0.0;      // |gamma| < 1e-13 beyond this point
    double hat_support = 1.0;

    double value(double y) const;      // 0 beyond y_max
    double hat_value(double xi) const;
};

const GammaWindow& make_gamma();  // shared immutable instance

// Hardy-Littlewood maximal function restricted to dyadic radii
// {dx 2^j, j = 0..ceil(log2(len/dx))} plus the degenerate single-sample
// window; averages are means of the samples within distance r (clipped at the
// domain ends). Within a factor 2 of the true supremum for piecewise
// monotone data.
double maximal_function(const Eigen::VectorXd& g, Eigen::Index x_index);
Eigen::VectorXd maximal_function_all(const Eigen::VectorXd& g);

struct WavePacket {
    double theta = 0.0;
    double v = 0.0;
    double scale = 0.0;  // R of the decomposition the packet came from
    Complex c{0.0, 0.0};
    FrequencyProfile packet_profile;
};

struct PacketInfo {
    int theta_index = 0;  // index into the theta lattice
    double theta = 0.0;
    double v = 0.0;
    Complex c{0.0, 0.0};
    double l2 = 0.0;       // exact when materialized, else an upper bound
    bool l2_exact = false;
};

struct DecomposeOptions {
    double eps_drop = 1e-8;          // drop packets with |c| < eps_drop max|c|
    double c_star = 16.0;            // admissible band for sum|c|^2 / ||f||^2
    double materialize_rel = 1e-9;   // exact-norm threshold relative to ||f||_2
    bool check_equivalence = true;
    unsigned threads = 1;            // theta slices are independent; results are
                                     // merged in lattice order, so the output is
                                     // identical for any thread count
};

class Decomposition {
public:
    double R = 0.0;
    double f_l2 = 0.0;
    double S = 0.0;
    double M = 0.0;                   // max packet L^2 norm
    double equivalence_constant = 0.0; // sum |c|^2 / ||f||_2^2
    double reconstruction_error = 0.0; // ||f - sum packets||_2 / ||f||_2 (measured + clip bound)
    std::size_t dropped_count = 0;

    const std::vector<PacketInfo>& packets() const { return packets_; }
    std::size_t packet_count() const { return packets_.size(); }

    // materializes the packet's frequency profile (support-clipped)
    WavePacket packet(std::size_t index) const;

    // Ef_theta(x, 0) for a theta slice on the dual grid (diagnostics)
    Eigen::VectorXcd theta_slice_dual(int theta_index) const;

    // decomposition restricted to a subset of packets (shares the source data)
    Decomposition subset(const std::vector<std::size_t>& indices) const;

    // lattice geometry
    double theta_spacing() const;
    double v_spacing() const;

    struct Shared;
    std::shared_ptr<const Shared> shared_;
    std::vector<PacketInfo> packets_;
};

// Wave packet decomposition of size R. pre: R >= 64, f nonzero, f's grid
// resolves R^{-1/2} (at least 8 sqrt(R) samples).
Decomposition decompose(const FrequencyProfile& f, double R,
                        const DecomposeOptions& opts = {});

// Ef_{theta,v} on a grid; records the measured localization constant
// C4 = max |Ef| (1 + dist/sqrt(R))^4 / (R^{-1/4} |c|).
struct PacketFieldResult {
    SpaceTimeField field;
    double localization_c4 = 0.0;
};
PacketFieldResult packet_field(const WavePacket& packet, const SpaceTimeGrid& grid,
                               double c4_bound = 1e3);

// Sum of |Ef_{theta,v}(x, t)| over packets whose R^{(1+delta)/2}-radius tube
// misses (x, t). pre: delta in (0, 1].
double tail_sum(const Decomposition& d, double x, double t, double delta);

// Regroups the R2-scale frequency intervals into R1-scale intervals and
// decomposes at scale R1. pre: R1 <= R2 with sqrt(R2/R1) an integer.
struct RescaleResult {
    Decomposition decomposition;
    double cross_scale_constant = 0.0;  // max|c_new| / ((R2/R1)^{1/4} max|c_old|)
};
RescaleResult rescale_decomposition(const Decomposition& d, double R1,
                                    const DecomposeOptions& opts = {});

} // namespace wpl
