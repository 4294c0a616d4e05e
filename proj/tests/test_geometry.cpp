#include <cmath>
#include <random>

#include "doctest.h"

#include "coswave/geometry.hpp"

using namespace coswave;

namespace {

Cone make_desitter_cone(double T) { return Cone(ScaleFactor::de_sitter(1.0), T); }

}  // namespace

TEST_CASE("psi vanishes at lambda = 0 and on the cone base rim") {
    const auto cone = make_desitter_cone(2.0);
    for (double r : {0.0, 0.3, 0.7, cone.horizon_T}) CHECK(cone_psi(cone, 0.0, r) == 0.0);
    // On the rim r = A(T) the level surface stays glued to t = 0.
    for (double lam : {0.1, 0.4, 0.8 * cone.horizon_T})
        CHECK(cone_psi(cone, lam, cone.horizon_T) <= 1e-10);
}

TEST_CASE("psi on the axis inverts the horizon") {
    const auto cone = make_desitter_cone(2.0);
    for (double lam : {0.1, 0.3, 0.6, 0.8}) {
        const double expected = cone.sf.horizon_inverse(lam);
        CHECK(cone_psi(cone, lam, 0.0) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("theta closed form") {
    // A(T) = 0.8 at T = ln 5; lambda0 = 0.4 gives sqrt(0.48)/0.8 = sqrt(0.75).
    const auto cone = make_desitter_cone(std::log(5.0));
    CHECK(cone.horizon_T == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(cone_theta(cone, 0.4) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
    // theta < 1 strictly on (0, A(T))
    for (double lam0 : {0.01, 0.2, 0.5, 0.79}) {
        const double th = cone_theta(cone, lam0);
        CHECK(th > 0.0);
        CHECK(th < 1.0);
    }
}

TEST_CASE("characteristic slope bound holds on 10^4 random samples") {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (const double T : {0.8, 2.0, 5.0}) {
        const auto cone = make_desitter_cone(T);
        const double A = cone.horizon_T;
        for (int k = 0; k < 10000; ++k) {
            const double lam0 = (0.05 + 0.9 * unif(rng)) * A;
            const double lam = lam0 * unif(rng);
            const double r = A * unif(rng);
            const auto chk = char_slope_bound(cone, lam, r, lam0);
            CHECK(chk.ok);
            CHECK(chk.bound < 1.0);
        }
    }
}

TEST_CASE("psi_lambda bounded by 1/sqrt(a(T))") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto cone = make_desitter_cone(1.5);
    const double bound = 1.0 / std::sqrt(cone.sf.value(cone.T));
    for (int k = 0; k < 5000; ++k) {
        const double lam = 0.95 * cone.horizon_T * unif(rng);
        const double r = cone.horizon_T * unif(rng);
        const double pl = cone_psi_lambda(cone, lam, r);
        CHECK(pl >= 0.0);
        CHECK(pl <= bound * (1.0 + 1e-12));
    }
}

TEST_CASE("psi monotone in lambda and in r") {
    const auto cone = make_desitter_cone(2.0);
    double prev = 0.0;
    for (int k = 1; k <= 40; ++k) {
        const double lam = 0.95 * cone.horizon_T * double(k) / 40.0;
        const double cur = cone_psi(cone, lam, 0.3);
        CHECK(cur >= prev);
        prev = cur;
    }
    prev = cone_psi(cone, 0.5, 0.0);
    for (int k = 1; k <= 40; ++k) {
        const double r = cone.horizon_T * double(k) / 40.0;
        const double cur = cone_psi(cone, 0.5, r);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }
}

TEST_CASE("support radius of a truncated field") {
    Grid grid{GridMode::Radial, 3, 2.0, 101};
    FieldState state;
    state.u.assign(grid.size(), 0.0);
    state.v.assign(grid.size(), 0.0);
    CHECK(support_radius(state, grid, 1e-12) == 0.0);
    state.u[40] = 0.5;  // r = 0.8
    state.v[55] = 1e-3;  // r = 1.1
    CHECK(support_radius(state, grid, 1e-12) == doctest::Approx(1.1));
    CHECK(support_radius(state, grid, 1e-2) == doctest::Approx(0.8));
}

TEST_CASE("containment report flags excursions beyond R + A(t) + slack") {
    const auto sf = ScaleFactor::constant(1.0);  // A(t) = t
    std::vector<std::pair<double, double>> hist{{0.0, 1.0}, {0.5, 1.5}, {1.0, 2.3}};
    auto rep = check_support_containment(hist, 1.0, sf, 0.05);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].t == doctest::Approx(1.0));
    CHECK(rep.max_excess == doctest::Approx(0.3));

    auto ok = check_support_containment(hist, 1.0, sf, 0.4);
    CHECK(ok.pass);
    CHECK(ok.max_excess == doctest::Approx(0.3));
}
