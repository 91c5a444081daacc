#include <doctest.h>

#include "wpl/extension.hpp"
#include "wpl/norms.hpp"
#include "wpl/profiles.hpp"
#include "wpl/rng.hpp"

#include <cmath>

using namespace wpl;

namespace {

constexpr double kPi = 3.14159265358979323846;

SpaceTimeField constant_field(double R, Eigen::Index n, double xh, double th) {
    auto g = make_grid(R, n, n, xh, th);
    return make_field(g, Eigen::MatrixXcd::Ones(n, n));
}

SpaceTimeField random_field(double R, Eigen::Index n, std::uint64_t seed) {
    auto g = make_grid(R, n, n);
    Eigen::MatrixXcd v(n, n);
    SplitMix64 rng(seed);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) v(i, j) = Complex(rng.normal(), rng.normal());
    return make_field(g, v);
}

} // namespace

TEST_CASE("lp norms of constants match disk areas") {
    // ||1||_{L2(B_1)} = sqrt(pi)
    auto f1 = constant_field(1.0, 512, 1.5, 1.5);
    CHECK(lp_norm_ball(f1, 2.0, 1.0) == doctest::Approx(std::sqrt(kPi)).epsilon(0.01));
    // ||1||_{L4(B_2)} = (4 pi)^{1/4}
    auto f2 = constant_field(2.0, 512, 2.5, 2.5);
    CHECK(lp_norm_ball(f2, 4.0, 2.0) == doctest::Approx(std::pow(4.0 * kPi, 0.25)).epsilon(0.01));
    CHECK_THROWS(lp_norm_ball(f1, 0.5, 1.0));
    CHECK_THROWS(lp_norm_ball(f1, 2.0, 5.0));  // grid does not cover B_5
}

TEST_CASE("L1 norm of |x| over the unit disk (polar closed form 4/3)") {
    const Eigen::Index n = 1024;
    auto g = make_grid(1.0, n, n, 1.2, 1.2);
    Eigen::MatrixXcd v(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) v(i, j) = std::abs(g.x(i));
    auto f = make_field(g, v);
    CHECK(lp_norm_ball(f, 1.0, 1.0) == doctest::Approx(4.0 / 3.0).epsilon(0.01));
}

TEST_CASE("weighted band norm basics") {
    auto g = make_grid(4.0, 128, 128);
    auto zero = make_field(g, Eigen::MatrixXcd::Zero(128, 128));
    CHECK(weighted_l2_band(zero, 4.0) == 0.0);
    CHECK_THROWS(weighted_l2_band(zero, 8.0));  // band not covered
}

TEST_CASE("band norm of the constant profile respects the conserved bound") {
    // equality would need infinite x-range; the finite window only loses mass
    const double R = 256.0;
    auto f = make_profile(Eigen::VectorXcd::Ones(4096), "ones");
    auto grid = make_grid(R, 512, 256);
    auto field = evaluate_field(f, grid);
    const double bound =
        std::sqrt(2.0 * 3.14159265358979323846) * std::sqrt(2.0 * R) * f.l2_norm();
    CHECK(weighted_l2_band(field, R) <= bound * 1.01);

    auto f1 = make_f1(R);
    auto field1 = evaluate_field(f1, grid);
    const double bound1 =
        std::sqrt(2.0 * 3.14159265358979323846) * std::sqrt(2.0 * R) * f1.l2_norm();
    CHECK(weighted_l2_band(field1, R) <= bound1 * 1.01);
}

TEST_CASE("profile L2 norms") {
    CHECK(make_profile(Eigen::VectorXcd::Ones(1024)).l2_norm() ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("monotone in R") {
    auto f = random_field(8.0, 256, 3);
    double prev = 0.0;
    for (double R : {1.0, 2.0, 4.0, 8.0}) {
        const double cur = lp_norm_ball(f, 3.0, R);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("Hoelder consistency on random fields") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
        auto f = random_field(4.0, 128, seed);
        const double p1 = 2.0, p2 = 6.0;
        for (double p : {2.5, 3.0, 4.0, 5.0}) {
            const double s = (1.0 / p - 1.0 / p1) / (1.0 / p2 - 1.0 / p1);
            const double lhs = lp_norm_ball(f, p, 4.0);
            const double rhs = std::pow(lp_norm_ball(f, p1, 4.0), 1.0 - s) *
                               std::pow(lp_norm_ball(f, p2, 4.0), s);
            CHECK(lhs <= rhs * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("norms scale exactly with |lambda|") {
    auto f = random_field(4.0, 64, 9);
    const Complex lam(3.0, -4.0);  // |lam| = 5
    SpaceTimeField g = f;
    g.values *= lam;
    for (double p : {1.0, 2.0, 4.0}) {
        CHECK(lp_norm_ball(g, p, 4.0) ==
              doctest::Approx(5.0 * lp_norm_ball(f, p, 4.0)).epsilon(1e-12));
    }
    CHECK(weighted_l2_band(g, 4.0) == doctest::Approx(5.0 * weighted_l2_band(f, 4.0)).epsilon(1e-12));
}

TEST_CASE("streaming accumulator matches whole-field norms") {
    auto f = random_field(6.0, 128, 12);
    BallNormAccumulator acc(f.grid, 4.0, 6.0);
    for (Eigen::Index it = 0; it < f.grid.nt; ++it)
        acc.add_slice(it, f.values.col(it));
    CHECK(acc.lp_ball() == doctest::Approx(lp_norm_ball(f, 4.0, 6.0)).epsilon(1e-12));
    CHECK(acc.l2_band() == doctest::Approx(weighted_l2_band(f, 6.0)).epsilon(1e-12));
    CHECK(acc.sup_abs == doctest::Approx(f.values.cwiseAbs().maxCoeff()).epsilon(1e-15));
}
