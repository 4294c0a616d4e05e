#include <cmath>
#include <vector>

#include "doctest.h"

#include "coswave/experiments.hpp"

using namespace coswave;

namespace {

ProblemSpec small_desitter() {
    ProblemSpec spec;
    spec.dim = 3;
    spec.p = 2.0;
    spec.mu = 3.0;
    spec.sf = ScaleFactor::de_sitter(1.0);
    spec.domain_radius = 2.2;
    spec.grid_points = 101;
    spec.stepping.t_max = 120.0;
    return spec;
}

}  // namespace

TEST_CASE("theorem exponents") {
    CHECK(theorem_exponent(3.0, 0.0) == doctest::Approx(-0.5));
    CHECK(theorem_exponent(2.0, 1.0) == doctest::Approx(-1.0));
    CHECK(theorem_exponent(1.5, 2.0) == doctest::Approx(-0.5));
    CHECK(flrw_comparison_exponent(2.0) == doctest::Approx(-0.5));
    CHECK(flrw_comparison_exponent(3.0) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(theorem_exponent(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("geometric epsilon ladder") {
    const auto e = geometric_epsilons(2.0, 0.5, 4);
    REQUIRE(e.size() == 4);
    CHECK(e[0] == 2.0);
    CHECK(e[3] == 0.25);
    CHECK_THROWS_AS(geometric_epsilons(-1.0, 0.5, 4), std::invalid_argument);
    CHECK_THROWS_AS(geometric_epsilons(1.0, 1.5, 4), std::invalid_argument);
}

TEST_CASE("fit recovers an exact power law") {
    // T = 5 eps^{-1/2}
    std::vector<std::pair<double, double>> pts;
    for (int k = 0; k < 8; ++k) {
        const double eps = std::pow(2.0, -k);
        pts.emplace_back(eps, 5.0 * std::pow(eps, -0.5));
    }
    const auto fit = fit_loglog(pts, 4, -0.5, 0.05);
    REQUIRE(fit.fitted);
    CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(5.0)).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.pass);
    CHECK(fit.monotone);
}

TEST_CASE("fit flags non-monotone lifespans and slope mismatch") {
    std::vector<std::pair<double, double>> pts{
        {1.0, 5.0}, {0.5, 7.0}, {0.25, 6.0}, {0.125, 14.0}, {0.0625, 20.0}};
    const auto fit = fit_loglog(pts, 4, -0.5, 1e-3);
    CHECK_FALSE(fit.monotone);
    CHECK_FALSE(fit.pass);
    CHECK_THROWS_AS(fit_loglog(pts, 3, -0.5, 0.1), std::invalid_argument);

    // too few points: no fit, no pass
    const auto none = fit_loglog({{1.0, 2.0}, {0.5, 3.0}}, 4, -0.5, 0.1);
    CHECK_FALSE(none.fitted);
    CHECK_FALSE(none.pass);
}

TEST_CASE("fit sorts points by decreasing epsilon first") {
    std::vector<std::pair<double, double>> pts;
    for (int k = 7; k >= 0; --k) {
        const double eps = std::pow(2.0, -k);
        pts.emplace_back(eps, 3.0 * std::pow(eps, -1.0));
    }
    const auto fit = fit_loglog(pts, 4, -1.0, 0.05);
    REQUIRE(fit.fitted);
    CHECK(fit.points.front().first > fit.points.back().first);
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fit.monotone);
}

TEST_CASE("pde sweep blows up monotonically and is deterministic across workers") {
    const auto spec = small_desitter();
    const auto epsilons = geometric_epsilons(8.0, 0.5, 6);
    const auto serial = run_sweep(spec, epsilons, 1);
    const auto parallel = run_sweep(spec, epsilons, 3);
    REQUIRE(serial.size() == 6);
    REQUIRE(parallel.size() == 6);
    double prev = 0.0;
    for (std::size_t k = 0; k < serial.size(); ++k) {
        CHECK(serial[k].epsilon == epsilons[k]);
        REQUIRE(serial[k].result.verdict == Verdict::BlewUp);
        REQUIRE(parallel[k].result.verdict == Verdict::BlewUp);
        // identical arithmetic regardless of the worker count
        CHECK(*serial[k].result.lifespan == *parallel[k].result.lifespan);
        CHECK(*serial[k].result.lifespan > prev);
        prev = *serial[k].result.lifespan;
    }
}

TEST_CASE("linear sweep never blows up") {
    auto spec = small_desitter();
    spec.nonlinearity = Nonlinearity::None;
    spec.stepping.t_max = 2.0;
    const auto epsilons = geometric_epsilons(2.0, 0.5, 6);
    const auto runs = run_sweep(spec, epsilons, 2);
    for (const auto& run : runs) CHECK(run.result.verdict != Verdict::BlewUp);
}

TEST_CASE("sweep input guards") {
    const auto spec = small_desitter();
    CHECK_THROWS_AS(run_sweep(spec, {1.0, 0.5}, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_sweep(spec, {1.0, 0.5, 0.25, 0.5, 0.125, 0.06}, 1), std::invalid_argument);
}
