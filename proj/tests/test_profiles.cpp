#include <doctest.h>

#include "wpl/extension.hpp"
#include "wpl/profiles.hpp"

#include <cmath>
#include <vector>

using namespace wpl;

namespace {

// grid samples inside |omega - c| <= r
std::vector<Eigen::Index> samples_in(const FrequencyProfile& f, double c, double r) {
    std::vector<Eigen::Index> out;
    for (Eigen::Index j = 0; j < f.size(); ++j)
        if (std::abs(f.omega(j) - c) <= r) out.push_back(j);
    return out;
}

} // namespace

TEST_CASE("f0: plateau, support, L2 bracket") {
    auto f = make_f0();
    for (Eigen::Index j : samples_in(f, 0.0, 0.5)) CHECK(f.samples[j].real() == 1.0);
    CHECK(f.samples[0] == Complex(0.0, 0.0));
    CHECK(f.samples[f.size() - 1] == Complex(0.0, 0.0));
    const double l2 = f.l2_norm();
    CHECK(l2 >= 1.0);
    CHECK(l2 <= std::sqrt(2.0));
}

TEST_CASE("f1: plateau, support, L2 bracket") {
    const double R = 1024.0;
    auto f = make_f1(R);
    const double a = 1.0 / std::sqrt(R);
    for (Eigen::Index j : samples_in(f, 0.0, a)) CHECK(f.samples[j].real() == 1.0);
    for (Eigen::Index j = 0; j < f.size(); ++j)
        if (std::abs(f.omega(j)) >= 2.0 * a) CHECK(f.samples[j] == Complex(0.0, 0.0));
    const double bracket = f.l2_norm() * std::pow(R, 0.25);
    CHECK(bracket >= std::sqrt(2.0));
    CHECK(bracket <= 2.0);
}

TEST_CASE("many: plateau, support, L2 bracket") {
    const double U = 1.0 / 64.0;
    auto f = make_many(U);
    for (Eigen::Index j : samples_in(f, 0.0, 0.5 * U)) CHECK(f.samples[j].real() == 1.0);
    for (Eigen::Index j = 0; j < f.size(); ++j)
        if (std::abs(f.omega(j)) >= U) CHECK(f.samples[j] == Complex(0.0, 0.0));
    CHECK(f.l2_norm() >= std::sqrt(U));
    CHECK(f.l2_norm() <= std::sqrt(2.0 * U));
    CHECK_THROWS(make_many(0.9));
}

TEST_CASE("bundle: lattice plateaus, gaps, disjoint supports") {
    const double R = 1024.0;
    const int N = 8;
    auto f = make_bundle(R, N);
    const double a = 1.0 / std::sqrt(R);
    for (int n = -N; n <= N; ++n) {
        auto idx = samples_in(f, n * a, 0.4 * a / N);
        CHECK(!idx.empty());
        for (Eigen::Index j : idx) CHECK(f.samples[j].real() == 1.0);
    }
    // midpoints between bumps vanish for N >= 2
    for (int n = -N; n < N; ++n) {
        for (Eigen::Index j : samples_in(f, (n + 0.5) * a, 0.2 * a))
            CHECK(f.samples[j] == Complex(0.0, 0.0));
    }
    CHECK_THROWS(make_bundle(R, 0));
    CHECK_THROWS(make_bundle(R, 40));  // N >= sqrt(R)
    // L2 mass bracket: (2N+1)^{1/2} (c R^{-1/2} N^{-1})^{1/2} with c in [1, 2]
    const double bracket = f.l2_norm() * std::pow(R, 0.25);
    CHECK(bracket >= 0.5);
    CHECK(bracket <= 2.0);
}

TEST_CASE("star: exact middle plateau and reflection symmetry") {
    const double R = 1024.0;
    const int N = 10;
    auto f = make_star(R, N);
    const double a = 1.0 / std::sqrt(R);
    // sample points across the middle interval are exactly 1
    int checked = 0;
    for (Eigen::Index j : samples_in(f, 0.0, (N + 0.2) * a)) {
        if (j % 29 != 0) continue;
        CHECK(f.samples[j].real() == doctest::Approx(1.0).epsilon(1e-10));
        ++checked;
    }
    CHECK(checked >= 20);
    // single bump: complementary ramp means B(mid + u) + B(mid - u) = 1
    BumpSpec bump{0.0, 0.25 * a, 0.75 * a, true};
    const double mid = 0.5 * a;
    for (double u : {0.01 * a, 0.1 * a, 0.2 * a}) {
        CHECK(bump.eval(mid + u) + bump.eval(mid - u) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // Ef(0,0) = integral of f, bracketed by the plateau/support masses
    const Complex v = evaluate_extension(f, 0.0, 0.0);
    CHECK(v.real() >= (2.0 * N + 1.0) / std::sqrt(R) * (1.0 - 1e-6));
    CHECK(v.real() <= (2.0 * N + 2.0) / std::sqrt(R));
    CHECK(std::abs(v.imag()) < 1e-12);
    CHECK_THROWS(make_star(R, 32));  // N >= sqrt(R) - 1
}

TEST_CASE("profiles are real, even, bounded by 1") {
    const double R = 256.0;
    for (const auto& f : {make_f0(), make_f1(R), make_many(1.0 / 32.0), make_bundle(R, 5),
                          make_star(R, 5)}) {
        for (Eigen::Index j = 0; j < f.size(); ++j) {
            CHECK(f.samples[j].imag() == 0.0);
            CHECK(std::abs(f.samples[j].real()) <= 1.0 + 1e-15);
            // even up to the grid's floating-point symmetry
            CHECK(std::abs(f.samples[j] - f.samples[f.size() - 1 - j]) < 1e-12);
        }
    }
}
