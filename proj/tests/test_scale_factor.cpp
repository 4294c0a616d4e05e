#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "coswave/quadrature.hpp"
#include "coswave/scale_factor.hpp"

using namespace coswave;

TEST_CASE("de Sitter closed forms") {
    const auto sf = ScaleFactor::de_sitter(1.0);
    // a(ln 2) = e^{-2 ln 2} = 1/4
    CHECK(sf.value(std::log(2.0)) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(sf.value(0.0) == doctest::Approx(1.0));
    // a'(0) = -2H
    CHECK(sf.derivative(0.0) == doctest::Approx(-2.0).epsilon(1e-14));
    // A(t) = (1 - e^{-Ht}) / H
    CHECK(sf.horizon(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
    REQUIRE(sf.horizon_limit().has_value());
    CHECK(*sf.horizon_limit() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("power law closed forms") {
    const auto sf = ScaleFactor::power_law(4.0, 4.0);
    // a(t) = 4 (1+t)^-4, sqrt(a) = 2 (1+t)^-2, A(t) = 2 (1 - 1/(1+t))
    CHECK(sf.value(1.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(sf.horizon(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    REQUIRE(sf.horizon_limit().has_value());
    // A(inf) = sqrt(a0) * 2/(alpha-2)
    CHECK(*sf.horizon_limit() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("horizon matches direct quadrature of sqrt(a)") {
    std::vector<ScaleFactor> factors;
    for (double H : {0.5, 1.0, 3.0}) factors.push_back(ScaleFactor::de_sitter(H));
    for (double alpha : {3.0, 4.0, 6.0}) factors.push_back(ScaleFactor::power_law(1.7, alpha));
    factors.push_back(ScaleFactor::constant(2.25));
    for (const auto& sf : factors) {
        for (double t : {0.3, 1.0, 4.0, 9.0}) {
            const double ref =
                integrate_or_throw([&](double s) { return std::sqrt(sf.value(s)); }, 0.0, t, 1e-12);
            CHECK(sf.horizon(t) == doctest::Approx(ref).epsilon(1e-8));
        }
    }
}

TEST_CASE("horizon_inverse is a right inverse of horizon") {
    for (const auto& sf : {ScaleFactor::de_sitter(1.0), ScaleFactor::power_law(1.0, 3.0)}) {
        for (int k = 0; k < 100; ++k) {
            const double t = 20.0 * double(k) / 99.0;
            const double s = sf.horizon(t);
            CHECK(sf.horizon(sf.horizon_inverse(s)) == doctest::Approx(s).epsilon(1e-8));
        }
    }
}

TEST_CASE("derivative is nonpositive everywhere for admissible factors") {
    for (const auto& sf : {ScaleFactor::de_sitter(0.7), ScaleFactor::power_law(2.0, 2.5)}) {
        for (int k = 0; k < 1000; ++k) {
            const double t = 30.0 * double(k) / 999.0;
            CHECK(sf.derivative(t) <= 0.0);
            CHECK(sf.value(t) > 0.0);
        }
    }
}

TEST_CASE("admissibility gate") {
    CHECK(ScaleFactor::de_sitter(1.0).check_admissible().admissible());
    CHECK(ScaleFactor::power_law(1.0, 2.5).check_admissible().admissible());
    CHECK(ScaleFactor::power_law(1.0, 6.0).check_admissible().admissible());

    const auto constant = ScaleFactor::constant(1.0).check_admissible();
    CHECK(constant.positive);
    CHECK(constant.nonincreasing);
    CHECK_FALSE(constant.integrable_root);
    CHECK_FALSE(constant.admissible());

    // alpha = 2 sits exactly on the divergent boundary of the horizon integral.
    CHECK_FALSE(ScaleFactor::power_law(1.0, 2.0).check_admissible().admissible());
    CHECK_FALSE(ScaleFactor::power_law(1.0, 1.5).check_admissible().admissible());
}

TEST_CASE("tabulated factor approximates its analytic source") {
    std::vector<std::pair<double, double>> samples;
    const auto ref = ScaleFactor::de_sitter(1.0);
    for (int k = 0; k <= 4000; ++k) {
        const double t = 20.0 * double(k) / 4000.0;
        samples.emplace_back(t, ref.value(t));
    }
    const auto sf = ScaleFactor::tabulated(samples);
    CHECK(sf.derivative_is_approximate());
    for (double t : {0.1, 0.5, 1.0, 3.0, 10.0}) {
        CHECK(sf.value(t) == doctest::Approx(ref.value(t)).epsilon(1e-6));
        CHECK(sf.horizon(t) == doctest::Approx(ref.horizon(t)).epsilon(1e-5));
    }
    CHECK(sf.check_admissible().positive);
    CHECK(sf.check_admissible().nonincreasing);
}

TEST_CASE("constructor guards") {
    CHECK_THROWS_AS(ScaleFactor::de_sitter(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ScaleFactor::de_sitter(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(ScaleFactor::power_law(-1.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(ScaleFactor::constant(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ScaleFactor::tabulated({{0.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(ScaleFactor::tabulated({{0.0, 1.0}, {0.0, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(ScaleFactor::tabulated({{0.0, 1.0}, {1.0, -0.5}}), std::invalid_argument);
}
