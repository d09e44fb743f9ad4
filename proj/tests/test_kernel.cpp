#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dhlab/errors.hpp"
#include "dhlab/kernel.hpp"

using namespace dhlab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("fejer point values") {
    CHECK(fejer(0.5, 0.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(fejer(1.0, 0.5) == doctest::Approx(4.0 / (kPi * kPi)).epsilon(1e-14));
    // zeros at alpha = k / eta for integer k != 0
    for (double eta : {0.3, 1.0, 2.5})
        for (int k = 1; k <= 3; ++k)
            CHECK(std::abs(fejer(eta, k / eta)) < 1e-25);
    CHECK_THROWS_AS(fejer(0.0, 0.3), DomainError);
    CHECK_THROWS_AS(fejer(-1.0, 0.3), DomainError);
}

TEST_CASE("fejer continuity at the origin (series branch)") {
    for (double eta : {0.1, 1.0, 10.0}) {
        double k0 = fejer(eta, 0.0);
        CHECK(k0 == eta * eta);
        // approaching zero from the exact branch must agree with the series
        double a = 2e-4 / (kPi * eta);
        CHECK(fejer(eta, a) == doctest::Approx(k0).epsilon(1e-7));
    }
}

TEST_CASE("fejer_hat tent") {
    CHECK(fejer_hat(0.5, 0.0) == 0.5);
    CHECK(fejer_hat(0.5, 0.5) == 0.0);
    CHECK(fejer_hat(0.5, 0.2) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(fejer_hat(0.5, -0.2) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(fejer_hat(0.5, 2.0) == 0.0);
}

TEST_CASE("fejer_tail_bound") {
    CHECK(fejer_tail_bound(1.0, 2.0 / (kPi * kPi)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fejer_tail_bound(0.7, 100.0) == doctest::Approx(0.0020264236728).epsilon(1e-10));
    // monotone decay in A
    double prev = fejer_tail_bound(1.0, 1.0);
    for (double A = 2.0; A < 1e6; A *= 10.0) {
        double b = fejer_tail_bound(1.0, A);
        CHECK(b < prev);
        prev = b;
    }
    CHECK_THROWS_AS(fejer_tail_bound(1.0, 0.0), DomainError);
}

TEST_CASE("pointwise bound K <= min(eta^2, 1/(pi^2 alpha^2))") {
    for (double eta : {0.1, 0.5, 1.0, 3.0}) {
        for (double a = 1e-9; a < 1e4; a *= 1.7) {
            double k = fejer(eta, a);
            CHECK(k <= eta * eta * (1.0 + 1e-12));
            CHECK(k <= 1.0 / (kPi * kPi * a * a) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("Fourier pair: truncated transform matches the tent") {
    // A = 1e6 / eta keeps the tail bound below 2.1e-7 eta.
    for (double eta : {0.1, 0.5, 1.0}) {
        double A = 1e6 / eta;
        double tail = fejer_tail_bound(eta, A);
        for (double frac : {0.0, 0.5, 1.0, 2.0}) {
            double theta = frac * eta;
            double got = fejer_transform_quadrature(eta, theta, A);
            CHECK(std::abs(got - fejer_hat(eta, theta)) <= tail + 1e-6);
        }
    }
}

TEST_CASE("normalization: integral of K_eta equals eta") {
    for (double eta : {0.25, 1.0}) {
        double A = 1e6 / eta;
        double got = fejer_transform_quadrature(eta, 0.0, A);
        CHECK(got == doctest::Approx(eta).epsilon(1e-6));
    }
}
