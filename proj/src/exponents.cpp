#include "wpl/exponents.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wpl {

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    a = std::abs(a);
    b = std::abs(b);
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

__int128 cross(const Fraction& a, const Fraction& b) {
    return static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den;
}

} // namespace

Fraction::Fraction(std::int64_t n) : num(n), den(1) {}

Fraction::Fraction(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::invalid_argument("Fraction: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const std::int64_t g = gcd64(n, d);
    num = g ? n / g : 0;
    den = g ? d / g : 1;
}

Fraction Fraction::operator+(const Fraction& o) const {
    return Fraction(num * o.den + o.num * den, den * o.den);
}
Fraction Fraction::operator-(const Fraction& o) const {
    return Fraction(num * o.den - o.num * den, den * o.den);
}
Fraction Fraction::operator*(const Fraction& o) const { return Fraction(num * o.num, den * o.den); }
bool Fraction::operator==(const Fraction& o) const { return cross(*this, o) == 0; }
bool Fraction::operator<(const Fraction& o) const { return cross(*this, o) < 0; }
bool Fraction::operator<=(const Fraction& o) const { return cross(*this, o) <= 0; }

Fraction parse_fraction(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        return Fraction(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Fraction(std::stoll(text));
    // decimal: scale by a power of ten
    std::string digits = text;
    digits.erase(dot, 1);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < text.size() - dot - 1; ++i) den *= 10;
    return Fraction(std::stoll(digits), den);
}

ExponentPoint make_point(double p, double alpha, double beta) {
    if (!(p >= 2.0 && p <= 6.0)) throw std::invalid_argument("ExponentPoint: p must be in [2, 6]");
    if (!(alpha >= 0.0) || !(beta >= 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw std::invalid_argument("ExponentPoint: alpha, beta must be finite and >= 0");
    ExponentPoint pt;
    pt.p = p;
    pt.alpha = alpha;
    pt.beta = beta;
    return pt;
}

ExponentPoint make_point(const Fraction& p, const Fraction& alpha, const Fraction& beta) {
    ExponentPoint pt = make_point(p.to_double(), alpha.to_double(), beta.to_double());
    pt.p_exact = p;
    pt.alpha_exact = alpha;
    pt.beta_exact = beta;
    return pt;
}

namespace {

// slack of constraint k in exact arithmetic (>= 0 iff satisfied)
Fraction slack_exact(const ExponentPoint& pt, int k) {
    const Fraction p = *pt.p_exact, a = *pt.alpha_exact, b = *pt.beta_exact;
    const Fraction pa = p * a, pb = p * b;
    switch (k) {
        case 1: return Fraction(1) - b;
        case 2: return pa * Fraction(4) + p - Fraction(6);
        case 3: return pa * Fraction(2) - pb + p - Fraction(4);
        case 4: return a * Fraction(4) - b;
        case 5: return pa * Fraction(12) - pb * Fraction(4) + p * Fraction(3) - Fraction(14);
        default: throw std::invalid_argument("constraint index out of range");
    }
}

double slack_float(const ExponentPoint& pt, int k) {
    const double p = pt.p, a = pt.alpha, b = pt.beta;
    switch (k) {
        case 1: return 1.0 - b;
        case 2: return 4.0 * p * a + p - 6.0;
        case 3: return 2.0 * p * a - p * b + p - 4.0;
        case 4: return 4.0 * a - b;
        case 5: return 12.0 * p * a - 4.0 * p * b + 3.0 * p - 14.0;
        default: throw std::invalid_argument("constraint index out of range");
    }
}

bool satisfied_up_to(const ExponentPoint& pt, int count) {
    if (pt.exact()) {
        for (int k = 1; k <= count; ++k)
            if (slack_exact(pt, k) < Fraction(0)) return false;
        return true;
    }
    for (int k = 1; k <= count; ++k)
        if (slack_float(pt, k) < -1e-12) return false;
    return true;
}

} // namespace

double constraint_slack(const ExponentPoint& pt, int k) {
    return pt.exact() ? slack_exact(pt, k).to_double() : slack_float(pt, k);
}

bool satisfies_sufficient(const ExponentPoint& pt) { return satisfied_up_to(pt, 5); }
bool satisfies_necessary(const ExponentPoint& pt) { return satisfied_up_to(pt, 4); }

std::vector<int> tight_constraints(const ExponentPoint& pt) {
    std::vector<int> out;
    for (int k = 1; k <= 5; ++k) {
        if (pt.exact()) {
            if (slack_exact(pt, k) == Fraction(0)) out.push_back(k);
        } else if (std::abs(slack_float(pt, k)) <= 1e-12) {
            out.push_back(k);
        }
    }
    return out;
}

ExponentPoint interpolate(const ExponentPoint& a, const ExponentPoint& b, double lambda) {
    if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("interpolate: lambda out of [0, 1]");
    const double p = lambda * a.p + (1.0 - lambda) * b.p;
    const double pa = lambda * a.p * a.alpha + (1.0 - lambda) * b.p * b.alpha;
    const double pb = lambda * a.p * a.beta + (1.0 - lambda) * b.p * b.beta;
    return make_point(p, pa / p, pb / p);
}

ExponentPoint extend_point(const ExponentPoint& pt, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("extend_point: lambda must be positive");
    if (pt.beta + 2.0 * lambda > 1.0 + 1e-12)
        throw std::invalid_argument("extend_point: beta + 2 lambda exceeds 1");
    return make_point(pt.p, pt.alpha + lambda, pt.beta + 2.0 * lambda);
}

const std::map<std::string, ExponentPoint>& named_vertices() {
    static const std::map<std::string, ExponentPoint> m = {
        {"X", make_point(Fraction(2), Fraction(1, 2), Fraction(0))},
        {"U", make_point(Fraction(4), Fraction(1, 8), Fraction(1, 4))},
        {"V", make_point(Fraction(5), Fraction(1, 20), Fraction(1, 5))},
        {"Y", make_point(Fraction(6), Fraction(0), Fraction(0))},
        {"W", make_point(Fraction(6), Fraction(1, 6), Fraction(2, 3))},
        {"F", make_point(Fraction(14, 3), Fraction(1, 14), Fraction(2, 7))},
    };
    return m;
}

ExponentPoint vertex(const std::string& name) {
    const auto& m = named_vertices();
    const auto it = m.find(name);
    if (it == m.end()) throw std::invalid_argument("vertex: unknown name '" + name + "'");
    return it->second;
}

} // namespace wpl
