#include <doctest.h>

#include "wpl/exponents.hpp"
#include "wpl/rng.hpp"

#include <cmath>

using namespace wpl;

TEST_CASE("fraction arithmetic and parsing") {
    CHECK(Fraction(14, 3) * Fraction(1, 14) == Fraction(1, 3));
    CHECK(Fraction(1, 2) + Fraction(1, 3) == Fraction(5, 6));
    CHECK(Fraction(2, 4) == Fraction(1, 2));
    CHECK(Fraction(1, 3) < Fraction(1, 2));
    CHECK(parse_fraction("14/3") == Fraction(14, 3));
    CHECK(parse_fraction("0.25") == Fraction(1, 4));
    CHECK_THROWS(Fraction(1, 0));
}

TEST_CASE("named vertices and their membership") {
    CHECK(vertex("U").p == doctest::Approx(4.0));
    CHECK(vertex("U").alpha == doctest::Approx(0.125));
    CHECK(vertex("U").beta == doctest::Approx(0.25));
    CHECK(vertex("F").p == doctest::Approx(14.0 / 3.0));
    CHECK_THROWS(vertex("Q"));

    for (const char* name : {"X", "U", "V", "Y", "W"}) {
        const auto pt = vertex(name);
        CHECK(satisfies_sufficient(pt));
        CHECK(satisfies_necessary(pt));
        CHECK(tight_constraints(pt).size() >= 2);  // vertices sit on faces
    }
    // U is tight exactly on constraints 2, 3, 5
    CHECK(tight_constraints(vertex("U")) == std::vector<int>{2, 3, 5});

    // F is necessary but not sufficient, failing only constraint 5
    const auto F = vertex("F");
    CHECK(satisfies_necessary(F));
    CHECK_FALSE(satisfies_sufficient(F));
    for (int k = 1; k <= 4; ++k) CHECK(constraint_slack(F, k) >= 0.0);
    CHECK(constraint_slack(F, 5) < 0.0);
    // 12 p alpha - 4 p beta + 3 p = 38/3 at F
    const Fraction lhs = Fraction(12) * Fraction(14, 3) * Fraction(1, 14) -
                         Fraction(4) * Fraction(14, 3) * Fraction(2, 7) + Fraction(3) * Fraction(14, 3);
    CHECK(lhs == Fraction(38, 3));
}

TEST_CASE("simple membership examples") {
    CHECK_FALSE(satisfies_necessary(make_point(4.0, 0.0, 0.0)));  // 4 p alpha + p = 4 < 6
    CHECK(satisfies_necessary(vertex("X")));
    CHECK(satisfies_sufficient(make_point(6.0, 0.5, 0.9)));
}

TEST_CASE("interpolation in (p, p alpha, p beta)") {
    const auto X = vertex("X"), Y = vertex("Y"), U = vertex("U"), W = vertex("W");
    // endpoints
    auto e0 = interpolate(X, Y, 0.0);
    CHECK(e0.p == doctest::Approx(Y.p));
    CHECK(e0.alpha == doctest::Approx(Y.alpha));
    auto e1 = interpolate(X, Y, 1.0);
    CHECK(e1.p == doctest::Approx(X.p));

    // X, Y midpoint reproduces the translation-invariant exponent at p = 4
    auto mid = interpolate(X, Y, 0.5);
    CHECK(mid.p == doctest::Approx(4.0));
    CHECK(mid.alpha == doctest::Approx(3.0 / (2.0 * mid.p) - 0.25).epsilon(1e-12));
    CHECK(mid.beta == doctest::Approx(0.0));

    // U, W midpoint
    auto uw = interpolate(U, W, 0.5);
    CHECK(uw.p == doctest::Approx(5.0));
    CHECK(uw.alpha == doctest::Approx(3.0 / 20.0).epsilon(1e-12));
    CHECK(uw.beta == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(satisfies_sufficient(uw));
}

TEST_CASE("extension map along the (alpha, beta) ray") {
    const auto V = vertex("V");
    auto e = extend_point(V, 0.1);
    CHECK(e.alpha == doctest::Approx(0.15));
    CHECK(e.beta == doctest::Approx(0.4));
    CHECK(satisfies_sufficient(e));

    auto bnd = extend_point(vertex("U"), 0.375);
    CHECK(bnd.beta == doctest::Approx(1.0));
    CHECK_THROWS(extend_point(vertex("U"), 0.4));
}

TEST_CASE("sufficient implies necessary on random points") {
    SplitMix64 rng(2024);
    int sufficient_count = 0;
    for (int i = 0; i < 200000; ++i) {
        const auto pt = make_point(rng.uniform(2.0, 6.0), rng.uniform(0.0, 1.0),
                                   rng.uniform(0.0, 1.0));
        if (satisfies_sufficient(pt)) {
            ++sufficient_count;
            CHECK(satisfies_necessary(pt));
        }
    }
    CHECK(sufficient_count > 1000);  // the region is fat enough to be sampled
}

TEST_CASE("convexity: interpolations of sufficient points stay sufficient") {
    SplitMix64 rng(77);
    int done = 0;
    while (done < 10000) {
        const auto a = make_point(rng.uniform(2.0, 6.0), rng.uniform(0.0, 1.0),
                                  rng.uniform(0.0, 1.0));
        const auto b = make_point(rng.uniform(2.0, 6.0), rng.uniform(0.0, 1.0),
                                  rng.uniform(0.0, 1.0));
        if (!satisfies_sufficient(a) || !satisfies_sufficient(b)) continue;
        const auto mid = interpolate(a, b, rng.next_double());
        CHECK(satisfies_sufficient(mid));
        ++done;
    }
}

TEST_CASE("monotone in alpha") {
    SplitMix64 rng(99);
    for (int i = 0; i < 5000; ++i) {
        const double p = rng.uniform(2.0, 6.0);
        const double alpha = rng.uniform(0.0, 1.0);
        const double beta = rng.uniform(0.0, 1.0);
        const auto pt = make_point(p, alpha, beta);
        if (!satisfies_sufficient(pt)) continue;
        CHECK(satisfies_sufficient(make_point(p, alpha + rng.uniform(0.0, 1.0), beta)));
    }
}
