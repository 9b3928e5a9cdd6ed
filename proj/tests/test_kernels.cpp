#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "pdmv/kernels.hpp"

using namespace pdmv;
using Catch::Approx;

TEST_CASE("fractional kernel evaluation") {
    CHECK(FractionalKernel{1.0}(0.37) == 1.0);
    CHECK(FractionalKernel{0.6}(1.0) == Approx(1.0 / std::tgamma(0.6)).epsilon(1e-12));
    // delta-1 < 0 singularity: diverges as t -> 0+
    const FractionalKernel k{0.6};
    CHECK(k(1e-8) > k(1e-4));
    CHECK(k(1e-12) > 1e4);
    CHECK_THROWS_AS(k(0.0), std::domain_error);
    CHECK_THROWS_AS(k(-1.0), std::domain_error);
    CHECK_THROWS_AS(FractionalKernel{0.5}, std::invalid_argument);
    CHECK_THROWS_AS(FractionalKernel{1.2}, std::invalid_argument);
}

TEST_CASE("power-law kernel evaluation") {
    CHECK(PowerLawKernel{1.0, 1.0, 1.0}(0.0) == 1.0);
    const PowerLawKernel t1{1.079113, 0.001, 0.556834};
    CHECK(t1(0.0) == Approx(1.079113 * std::pow(0.001, -0.556834)).epsilon(1e-12));
    CHECK(t1(0.0) == Approx(50.499).epsilon(1e-3));
    CHECK(t1(1.0) == Approx(1.079113 * std::pow(1.001, -0.556834)).epsilon(1e-12));
    // strictly decreasing
    CHECK(t1(0.1) > t1(0.2));
    CHECK_THROWS_AS((PowerLawKernel{-1.0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS((PowerLawKernel{1.0, 0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS((PowerLawKernel{1.0, 1.0, -0.5}), std::invalid_argument);
}

TEST_CASE("fractional Adams weights, delta = 1 reduce to trapezoid/rectangle") {
    const double dt = 0.05;
    for (std::size_t k : {0u, 1u, 5u, 17u}) {
        const auto w = adams_weights_fractional(FractionalKernel{1.0}, dt, k);
        CHECK(w.a[k + 1] == Approx(dt / 2.0).epsilon(1e-14));
        CHECK(w.a[0] == Approx(dt / 2.0).epsilon(1e-13));
        for (std::size_t j = 1; j <= k; ++j) CHECK(w.a[j] == Approx(dt).epsilon(1e-12));
        for (std::size_t j = 0; j <= k; ++j) CHECK(w.b[j] == Approx(dt).epsilon(1e-13));
    }
}

TEST_CASE("fractional Adams diagonal weight, delta = 0.6") {
    const auto w = adams_weights_fractional(FractionalKernel{0.6}, 0.1, 3);
    CHECK(w.a[4] == Approx(std::pow(0.1, 0.6) / std::tgamma(2.6)).epsilon(1e-12));
    CHECK(w.a[4] == Approx(0.1757).epsilon(1e-3));
}

TEST_CASE("fractional b-weights telescope to the kernel integral") {
    const double dt = 0.03;
    for (double delta : {0.55, 0.6, 0.8, 1.0}) {
        const FractionalKernel kern{delta};
        for (std::size_t k : {0u, 4u, 30u}) {
            const auto w = adams_weights_fractional(kern, dt, k);
            double s = 0.0;
            for (double b : w.b) s += b;
            const double exact = std::pow(dt * (k + 1.0), delta) / std::tgamma(delta + 1.0);
            CHECK(s == Approx(exact).epsilon(1e-12));
            CHECK(s == Approx(kern.integral(dt * (k + 1.0))).epsilon(1e-12));
        }
    }
}

TEST_CASE("power-law weights: singular exponents rejected") {
    const double dt = 0.01;
    CHECK_THROWS_AS(adams_weights_powerlaw(PowerLawKernel{1.0, 0.5, 1.0}, dt, 3),
                    std::domain_error);
    CHECK_THROWS_AS(adams_weights_powerlaw(PowerLawKernel{1.0, 0.5, 2.0}, dt, 3),
                    std::domain_error);
    CHECK_THROWS_AS(AdamsWeightCache(PowerLawKernel{1.0, 0.5, 2.0}, dt, 8), std::domain_error);
}

TEST_CASE("power-law b-weights: diagonal entry and telescoping") {
    const PowerLawKernel kern{1.079113, 0.001, 0.556834};
    const double dt = 0.01, q1 = 1.0 - kern.p;
    const auto w = adams_weights_powerlaw(kern, dt, 6);
    CHECK(w.b[6] == Approx(kern.rho1 *
                           (std::pow(kern.rho2 + dt, q1) - std::pow(kern.rho2, q1)) / q1)
                        .epsilon(1e-12));
    for (std::size_t k : {0u, 6u, 40u}) {
        const auto wk = adams_weights_powerlaw(kern, dt, k);
        double s = 0.0;
        for (double b : wk.b) s += b;
        CHECK(s == Approx(kern.integral(dt * (k + 1.0))).epsilon(1e-12));
    }
}

TEST_CASE("power-law b-weights approach flat-kernel limit as p -> 0") {
    const double dt = 0.2;
    const auto w = adams_weights_powerlaw(PowerLawKernel{1.0, 1e-9, 1e-7}, dt, 5);
    for (double b : w.b) CHECK(b == Approx(dt).epsilon(1e-5));
}

TEST_CASE("weights are finite and diagonals strictly positive") {
    for (double delta : {0.55, 0.75, 1.0}) {
        const auto w = adams_weights_fractional(FractionalKernel{delta}, 0.01, 12);
        CHECK(w.a[13] > 0.0);
        for (double x : w.a) CHECK(std::isfinite(x));
        for (double x : w.b) CHECK(std::isfinite(x));
    }
    const auto wp = adams_weights_powerlaw(PowerLawKernel{1.079113, 0.001, 0.556834}, 0.01, 12);
    CHECK(wp.a[13] > 0.0);
    for (double x : wp.a) CHECK(std::isfinite(x));
    for (double x : wp.b) CHECK(std::isfinite(x));
}

TEST_CASE("weight cache matches the row formulas") {
    const double dt = 0.02;
    const FractionalKernel kf{0.7};
    const PowerLawKernel kp{1.079113, 0.001, 0.556834};
    const AdamsWeightCache cf(kf, dt, 20);
    const AdamsWeightCache cp(kp, dt, 20);
    for (std::size_t k : {0u, 3u, 19u}) {
        const auto wf = adams_weights_fractional(kf, dt, k);
        const auto wp = adams_weights_powerlaw(kp, dt, k);
        for (std::size_t j = 0; j <= k + 1; ++j) {
            CHECK(cf.a(j, k) == Approx(wf.a[j]).margin(1e-16));
            CHECK(cp.a(j, k) == Approx(wp.a[j]).margin(1e-16));
        }
        for (std::size_t j = 0; j <= k; ++j) {
            CHECK(cf.b_lag(k - j) == Approx(wf.b[j]).margin(1e-16));
            CHECK(cp.b_lag(k - j) == Approx(wp.b[j]).margin(1e-16));
        }
    }
}
