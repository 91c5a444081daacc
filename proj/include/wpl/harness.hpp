#pragma once

#include "wpl/core.hpp"
#include "wpl/exponents.hpp"
#include "wpl/wavepacket.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wpl {

struct PowerLawFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// least squares, optionally in log-log coordinates. pre: >= 3 pairs for
// meaningful fits (>= 2 accepted for internal use), positive values in
// log-log mode.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& pairs, bool log_log);

enum class Family { F0, F1, Many, Bundle, Star };
Family family_from_name(const std::string& name);
std::string family_name(Family f);

// N_rule: how the family parameter scales with R
struct NRule {
    bool sqrt_R = false;  // N = sqrt(R) (or U = R^{-1/2}/2 for many)
    int constant = 1;
};

struct SweepRow {
    std::string family;
    double R = 0.0;
    double N = 0.0;  // N for bundle/star, U for many, 0 otherwise
    double p = 0.0;
    double lp_norm = 0.0;
    double l2_norm = 0.0;
    double S = 0.0;
    double ratio = 0.0;          // lp / (R^alpha S^beta l2)
    double sup_abs = 0.0;        // max |Ef| over the grid
    double band_l2 = 0.0;        // L2 over |t| <= R (full x-range)
    double l1_norm = 0.0;        // ||f||_1, for the sup bound
    std::string error;           // per-row failure note, empty on success
};

struct SweepReport {
    std::vector<SweepRow> rows;
    PowerLawFit lp_fit;      // log lp_norm vs log R
    PowerLawFit ratio_fit;   // log ratio vs log R
};

struct SweepConfig {
    Family family = Family::Bundle;
    double p = 4.0;
    std::vector<double> R_list;
    NRule n_rule{true, 1};
    ExponentPoint claimed;    // the (p, alpha, beta) the ratio is tested against
    Eigen::Index grid_budget = (Eigen::Index{1} << 26);
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

// Builds the profile, streams the field over a grid covering B_R, computes
// norms / S / the claimed-point ratio per R, and fits slopes across R.
// Hard inequalities (band bound, sup bound) are re-checked per row and
// reported in the row error field if violated.
SweepReport run_sweep(const SweepConfig& cfg);

std::string sweep_csv(const SweepReport& report);

// profile + evaluation grid for a family at scale R (resolution rules shared
// by sweeps and tests)
FrequencyProfile build_family(Family family, double R, const NRule& rule, double* N_out = nullptr);
SpaceTimeGrid sweep_grid(double R, Eigen::Index budget = (Eigen::Index{1} << 26));

struct FixedInequalityRow {
    std::string family;
    double R = 0.0;
    double p = 0.0;
    bool band_ok = false;      // ||Ef||_{L2 band} <= sqrt(2 pi) sqrt(2R) ||f||_2 (1 + 1%)
    bool sup_ok = false;       // max |Ef| <= ||f||_1 (1 + 1e-6)
    double trf_ratio = 0.0;    // ||Ef||_p / (R^{3/(2p) - 1/4} ||f||_2)
};

// Checks the fixed inequalities on a corpus of families at the given scales
// and records the translation-invariant-estimate ratios.
std::vector<FixedInequalityRow> verify_fixed_inequalities(const std::vector<Family>& corpus,
                                                          const std::vector<double>& R_list,
                                                          double p, unsigned threads = 1);

} // namespace wpl
