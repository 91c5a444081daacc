#include <doctest.h>

#include "wpl/core.hpp"
#include "wpl/fft.hpp"
#include "wpl/rng.hpp"
#include "wpl/profiles.hpp"

#include <complex>

using namespace wpl;

TEST_CASE("make_profile validates shape and values") {
    Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(1024);
    auto p = make_profile(ones, "ones");
    CHECK(p.size() == 1024);
    CHECK(p.omega(0) == doctest::Approx(-1.0));
    CHECK(p.omega(1023) == doctest::Approx(1.0));
    CHECK(p.l2_norm() == doctest::Approx(std::sqrt(2.0)));

    Eigen::VectorXcd zeros = Eigen::VectorXcd::Zero(1024);
    CHECK(make_profile(zeros).l2_norm() == 0.0);

    // samples of a generated family round-trip through make_profile
    auto f0 = make_f0();
    auto rt = make_profile(f0.samples, f0.label);
    CHECK((rt.samples - f0.samples).norm() == 0.0);
    CHECK(rt.l2_norm() == f0.l2_norm());

    CHECK_THROWS(make_profile(Eigen::VectorXcd::Ones(1000)));  // not a power of two
    CHECK_THROWS(make_profile(Eigen::VectorXcd::Ones(8)));     // too short
    Eigen::VectorXcd bad = ones;
    bad[3] = Complex(std::nan(""), 0.0);
    CHECK_THROWS(make_profile(bad));
}

TEST_CASE("grid construction and guard") {
    auto g = make_grid(100.0, 64, 32);
    CHECK(g.x_half == 100.0);
    CHECK(g.dx() > 0.0);
    CHECK_THROWS(make_grid(100.0, 1, 32));
    CHECK_THROWS(make_grid(100.0, 64, 32, 50.0, 100.0));  // range below R

    // guard scales like 4 (Rx + 2 Rt) / pi
    CHECK(nyquist_guard_min_samples(g) == doctest::Approx(4.0 * 300.0 / 3.14159265358979));
    CHECK(nyquist_guard_ok(512, g));
    CHECK_FALSE(nyquist_guard_ok(256, g));
}

TEST_CASE("field dimension agreement is enforced") {
    auto g = make_grid(10.0, 16, 8);
    CHECK_THROWS(make_field(g, Eigen::MatrixXcd::Zero(8, 16)));
    auto f = make_field(g, Eigen::MatrixXcd::Zero(16, 8));
    CHECK(f.values.rows() == 16);
}

TEST_CASE("tube membership") {
    // theta = 0, v = 0, R = 100: |x| <= 10
    auto t0 = make_tube(0.0, 0.0, 100.0);
    CHECK(tube_contains(t0, 10.0, 0.0));
    CHECK_FALSE(tube_contains(t0, 10.01, 0.0));

    // theta = R^{-1/2}, v = 0, R = 100 at (x, t) = (11, 10): |11 - 1| = 10
    auto t1 = make_tube(0.1, 0.0, 100.0);
    CHECK(tube_contains(t1, 11.0, 10.0));
    CHECK_FALSE(tube_contains(t1, 11.0 + 1e-6, 10.0));

    // off-lattice parameters are rejected
    CHECK_THROWS(make_tube(0.05, 0.0, 100.0));
    CHECK_THROWS(make_tube(0.1, 3.0, 100.0));
    CHECK_THROWS(make_tube(0.1, 10.0, 100.0, 0.5));  // w < 1
    // width multiplier enlarges the tube
    auto tw = make_tube(0.0, 0.0, 100.0, 2.0);
    CHECK(tube_contains(tw, 20.0, 0.0));
}

TEST_CASE("fft round trip and chirp-z equals direct sum") {
    SplitMix64 rng(7);
    const std::size_t n = 256;
    Eigen::VectorXcd v(n);
    for (auto& z : v) z = Complex(rng.normal(), rng.normal());
    Eigen::VectorXcd w = v;
    fft_forward(w);
    fft_inverse_unscaled(w);
    w /= static_cast<double>(n);
    CHECK((w - v).norm() < 1e-12 * v.norm());

    // chirp-z vs direct evaluation
    const double phi = 0.0371, alpha = -0.91;
    ChirpZPlan plan(n, 100, phi);
    std::vector<Complex> out(100);
    plan.run(v.data(), alpha, out.data());
    for (std::size_t k : {std::size_t{0}, std::size_t{17}, std::size_t{63}, std::size_t{99}}) {
        Complex direct(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            direct += v[static_cast<Eigen::Index>(j)] *
                      unit_phase(alpha * static_cast<double>(j) +
                                 phi * static_cast<double>(j) * static_cast<double>(k));
        CHECK(std::abs(out[k] - direct) < 1e-10 * (1.0 + std::abs(direct)));
    }
}
