#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace wpl {

enum class AmplitudeLaw { UnitPhase, Gaussian };

// Random function with transform supported in the delta-neighborhood of the
// truncated parabola, split into ~delta^{-1/2} arcs of length ~delta^{1/2}.
// Amplitudes sit on the frequency lattice of the periodic grid (spacing
// delta), so each g_iota is exactly band-limited to its arc's box.
struct ArcFunctionEnsemble {
    double delta = 0.0;
    std::uint64_t seed = 0;
    int n_arcs = 0;
    double side = 0.0;          // periodic domain [0, side)^2, side = 2 pi / delta
    int grid_n = 0;             // samples per axis for the full function
    struct FreqPoint {
        long k1 = 0, k2 = 0;    // frequency = (k1 delta, k2 delta)
        std::complex<double> amp;
    };
    std::vector<std::vector<FreqPoint>> arcs;  // amplitudes per arc

    int active_arcs() const;  // arcs with at least one nonzero amplitude
};

struct EnsembleOptions {
    AmplitudeLaw law = AmplitudeLaw::UnitPhase;
    int keep_arc = -1;         // >= 0: zero all other arcs (test ensembles)
    bool single_point = false; // keep one frequency point only (plane wave test)
};

// pre: delta^{-1/2} <= 64.
ArcFunctionEnsemble synthesize_ensemble(double delta, std::uint64_t seed,
                                        const EnsembleOptions& opts = {});

// ||g w||_6 / (sum_iota ||g_iota w||_6^2)^{1/2} with w the eta window at scale
// side/4 emulating the global L^6 norm. Arc norms are evaluated on the same
// grid as g when the grid is small, else on reduced grids via the band-limited
// envelope (both are Nyquist-exact band-limited quadratures).
double decoupling_ratio(const ArcFunctionEnsemble& ens);

// sum ||g_iota||_2^2 vs ||g||_2^2 on the grid (Parseval sanity, no weight)
void parseval_check(const ArcFunctionEnsemble& ens, double& g_l2_sq, double& arcs_l2_sq);

// fits log(max ratio over trials) against log(1/delta); returns the slope
struct GrowthFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::vector<double> max_ratio;  // per delta
};
GrowthFit decoupling_growth_fit(const std::vector<double>& delta_list, int trials,
                                std::uint64_t seed);

} // namespace wpl
