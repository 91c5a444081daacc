#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wpl {

// Exact rational arithmetic for the polytope faces; several named vertices sit
// exactly on them, so float comparisons are not enough.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Fraction() = default;
    Fraction(std::int64_t n);  // NOLINT(google-explicit-constructor)
    Fraction(std::int64_t n, std::int64_t d);

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    Fraction operator+(const Fraction& o) const;
    Fraction operator-(const Fraction& o) const;
    Fraction operator*(const Fraction& o) const;
    bool operator==(const Fraction& o) const;
    bool operator<(const Fraction& o) const;
    bool operator<=(const Fraction& o) const;
    bool operator>=(const Fraction& o) const { return o <= *this; }
};

// parse "a", "a/b", or a plain decimal
Fraction parse_fraction(const std::string& text);

// A point (p, alpha, beta) of the exponent polytope. Rational inputs carry
// exact coordinates; float inputs are checked with 1e-12 slack.
struct ExponentPoint {
    double p = 2.0;
    double alpha = 0.0;
    double beta = 0.0;
    std::optional<Fraction> p_exact, alpha_exact, beta_exact;

    bool exact() const { return p_exact && alpha_exact && beta_exact; }
};

ExponentPoint make_point(double p, double alpha, double beta);
ExponentPoint make_point(const Fraction& p, const Fraction& alpha, const Fraction& beta);

// The five sufficient-system constraints, in order:
//   1: beta <= 1
//   2: 4 p alpha + p >= 6
//   3: 2 p alpha - p beta + p >= 4
//   4: 4 alpha - beta >= 0
//   5: 12 p alpha - 4 p beta + 3 p >= 14
// The necessary system is constraints 1-4.
bool satisfies_sufficient(const ExponentPoint& pt);
bool satisfies_necessary(const ExponentPoint& pt);

// 1-based indices of constraints that hold with equality (exact points only;
// float points use the 1e-12 slack)
std::vector<int> tight_constraints(const ExponentPoint& pt);

// Per-constraint evaluation: returns the slack of constraint k (>= 0 means
// satisfied); used by the CLI report.
double constraint_slack(const ExponentPoint& pt, int k);

// Affine interpolation in (p, p alpha, p beta) coordinates; both constraint
// systems are linear there, so membership is convex. pre: lambda in [0, 1].
ExponentPoint interpolate(const ExponentPoint& a, const ExponentPoint& b, double lambda);

// (p, alpha + lambda, beta + 2 lambda); errors when beta + 2 lambda > 1.
ExponentPoint extend_point(const ExponentPoint& pt, double lambda);

// X, U, V, Y, W (endpoints of the proved region) and F (the conjectured
// vertex). Figure-1 labels M and N never get coordinates in the text and are
// omitted. Unknown names raise.
const std::map<std::string, ExponentPoint>& named_vertices();
ExponentPoint vertex(const std::string& name);

} // namespace wpl
