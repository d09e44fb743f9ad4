#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>

#include "dhlab/diophantine.hpp"
#include "dhlab/errors.hpp"

using namespace dhlab;

TEST_CASE("continued fraction of sqrt(2)") {
    auto list = continued_fraction(dd_const::sqrt2, 5);
    REQUIRE(list.convergents.size() == 5);
    const std::int64_t expect[5][2] = {{1, 1}, {3, 2}, {7, 5}, {17, 12}, {41, 29}};
    for (int i = 0; i < 5; ++i) {
        CHECK(list.convergents[i].a == expect[i][0]);
        CHECK(list.convergents[i].q == expect[i][1]);
    }
    CHECK_FALSE(list.exhausted);
}

TEST_CASE("continued fraction of pi") {
    auto list = continued_fraction(dd_const::pi, 4);
    REQUIRE(list.convergents.size() == 4);
    const std::int64_t expect[4][2] = {{3, 1}, {22, 7}, {333, 106}, {355, 113}};
    for (int i = 0; i < 4; ++i) {
        CHECK(list.convergents[i].a == expect[i][0]);
        CHECK(list.convergents[i].q == expect[i][1]);
    }
}

TEST_CASE("continued fraction of a rational terminates exactly") {
    auto list = continued_fraction(0.5, 1);
    REQUIRE(list.convergents.size() == 1);
    CHECK(list.convergents[0].a == 1);
    CHECK(list.convergents[0].q == 2);
    CHECK(list.convergents[0].quality == 0.0);
    CHECK_FALSE(list.exhausted);
}

TEST_CASE("continued fraction argument checks") {
    CHECK_THROWS_AS(continued_fraction(1.0 / 0.0, 3), DomainError);
    CHECK_THROWS_AS(continued_fraction(1.5, 0), DomainError);
}

TEST_CASE("convergents satisfy |xi - a/q| <= 1/q^2") {
    const DoubleDouble xis[] = {dd_const::sqrt2, dd_const::sqrt3, dd_const::pi,
                                dd_const::euler_e, DoubleDouble(-2.7182818)};
    for (const auto& xi : xis) {
        auto list = continued_fraction(xi, 20);
        std::int64_t prev_q = 0;
        for (const auto& c : list.convergents) {
            double lhs = std::abs(xi.to_double() - static_cast<double>(c.a) /
                                                       static_cast<double>(c.q));
            CHECK(lhs <= 1.0 / (static_cast<double>(c.q) * static_cast<double>(c.q)) +
                             std::ldexp(1.0, -40));
            if (prev_q > 1) CHECK(c.q > prev_q); // strictly increasing after the first
            prev_q = c.q;
        }
    }
}

TEST_CASE("law of best approximation, exhaustive q <= 200") {
    const DoubleDouble xis[] = {dd_const::sqrt2, dd_const::pi};
    for (const auto& xi : xis) {
        auto list = continued_fraction(xi, 12);
        for (const auto& c : list.convergents) {
            if (c.q > 200) break;
            for (std::int64_t qp = 1; qp < c.q; ++qp) {
                double v = xi.to_double() * static_cast<double>(qp);
                double best = std::abs(v - std::round(v));
                CHECK(best >= c.quality - 1e-12);
            }
        }
    }
}

TEST_CASE("asking past the certification limit sets the exhausted flag") {
    // sqrt2 denominators grow like 2.414^k; 64-bit folding stops near 2^52,
    // so a request for 100 convergents returns a certified prefix plus flag
    auto list = continued_fraction(dd_const::sqrt2, 100);
    CHECK(list.exhausted);
    CHECK(list.convergents.size() >= 30);
    CHECK(list.convergents.size() < 100);
    for (const auto& c : list.convergents) {
        double lhs = std::abs(dd_const::sqrt2.to_double() -
                              static_cast<double>(c.a) / static_cast<double>(c.q));
        CHECK(lhs <= 1.0 / (static_cast<double>(c.q) * static_cast<double>(c.q)) +
                         std::ldexp(1.0, -40));
    }
}

TEST_CASE("dirichlet_approx examples") {
    auto d = dirichlet_approx(dd_const::pi, 50);
    CHECK(d.a == 22);
    CHECK(d.q == 7);
    CHECK(d.quality == doctest::Approx(0.008851424871).epsilon(1e-9));

    auto e = dirichlet_approx(0.25, 10);
    CHECK(e.a == 1);
    CHECK(e.q == 4);
    CHECK(e.quality == 0.0);

    auto f = dirichlet_approx(dd_const::sqrt2, 10);
    CHECK(f.a == 7);
    CHECK(f.q == 5);
    CHECK(f.quality == doctest::Approx(0.07106781187).epsilon(1e-9));
}

TEST_CASE("dirichlet guarantee on random inputs") {
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> ua(-10.0, 10.0);
    std::uniform_int_distribution<std::int64_t> un(1, 1000000);
    for (int i = 0; i < 1000; ++i) {
        double alpha = ua(gen);
        std::int64_t N = un(gen);
        auto c = dirichlet_approx(alpha, N);
        REQUIRE(c.q >= 1);
        REQUIRE(c.q <= N);
        double resid = std::abs(static_cast<double>(c.q) * alpha - static_cast<double>(c.a));
        CHECK(resid <= 1.0 / static_cast<double>(N + 1) + 1e-12);
    }
}

TEST_CASE("choose_X ladder") {
    CHECK(choose_X(32) == doctest::Approx(512.0).epsilon(1e-12));
    CHECK(choose_X(1) == 1.0);
    CHECK(choose_X(29) == doctest::Approx(428.8608442694521).epsilon(1e-12));
    CHECK_THROWS_AS(choose_X(0), DomainError);
}
