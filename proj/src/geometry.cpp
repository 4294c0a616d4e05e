#include "coswave/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coswave {

Cone::Cone(ScaleFactor sf_, double T_, double x0_) : sf(std::move(sf_)), T(T_), x0(x0_) {
    if (!(T > 0.0)) throw std::invalid_argument("cone needs T > 0");
    horizon_T = sf.horizon(T);
    if (!(horizon_T > 0.0)) throw std::invalid_argument("cone needs A(T) > 0");
}

bool Cone::contains(double t, double x) const {
    if (t < 0.0 || t >= T) return false;
    return std::abs(x - x0) < horizon_T - sf.horizon(t);
}

namespace {

void check_lambda(const Cone& cone, double lambda) {
    if (!(lambda >= 0.0 && lambda < cone.horizon_T))
        throw std::invalid_argument("lambda outside [0, A(T))");
}

// sqrt((A-lambda)^2 + A^{-2} (2 lambda A - lambda^2) r^2)
double root_term(const Cone& cone, double lambda, double r) {
    const double A = cone.horizon_T;
    const double q = (2.0 * lambda * A - lambda * lambda) / (A * A);
    return std::sqrt((A - lambda) * (A - lambda) + q * r * r);
}

}  // namespace

double cone_psi(const Cone& cone, double lambda, double r) {
    check_lambda(cone, lambda);
    if (!(r >= 0.0 && r <= cone.horizon_T))
        throw std::invalid_argument("point outside the cone base |x-x0| <= A(T)");
    if (lambda == 0.0) return 0.0;
    const double s = cone.horizon_T - root_term(cone, lambda, r);
    if (s <= 0.0) return 0.0;  // round-off below the base plane
    auto limit = cone.sf.horizon_limit();
    if (limit && s >= *limit)
        throw std::invalid_argument("psi argument outside [0, A(inf))");
    return cone.sf.horizon_inverse(s);
}

double cone_theta(const Cone& cone, double lambda0) {
    const double A = cone.horizon_T;
    if (!(lambda0 > 0.0 && lambda0 < A)) throw std::invalid_argument("lambda0 outside (0, A(T))");
    return std::sqrt(2.0 * lambda0 * A - lambda0 * lambda0) / A;
}

double cone_char_slope(const Cone& cone, double lambda, double r) {
    check_lambda(cone, lambda);
    if (lambda == 0.0 || r == 0.0) return 0.0;
    const double A = cone.horizon_T;
    return (2.0 * lambda * A - lambda * lambda) * r / (A * A * root_term(cone, lambda, r));
}

double cone_psi_lambda(const Cone& cone, double lambda, double r) {
    check_lambda(cone, lambda);
    const double A = cone.horizon_T;
    const double psi = cone_psi(cone, lambda, r);
    const double a_psi = cone.sf.value(psi);
    return (A - lambda) * (1.0 - r * r / (A * A)) / (std::sqrt(a_psi) * root_term(cone, lambda, r));
}

SlopeCheck char_slope_bound(const Cone& cone, double lambda, double r, double lambda0) {
    if (!(lambda <= lambda0)) throw std::invalid_argument("char_slope_bound needs lambda <= lambda0");
    SlopeCheck chk;
    chk.value = cone_char_slope(cone, lambda, r);
    chk.bound = cone_theta(cone, lambda0);
    chk.ok = chk.value <= chk.bound;
    return chk;
}

double support_radius(const FieldState& state, const Grid& grid, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("support_radius needs tol > 0");
    double radius = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (std::abs(state.u[i]) > tol || std::abs(state.v[i]) > tol)
            radius = std::max(radius, grid.radius(i));
    }
    return radius;
}

ContainmentReport check_support_containment(const std::vector<std::pair<double, double>>& history,
                                            double R, const ScaleFactor& sf, double slack) {
    ContainmentReport rep;
    rep.max_excess = -std::numeric_limits<double>::infinity();
    for (const auto& [t, radius] : history) {
        const double bound = R + sf.horizon(t);
        rep.max_excess = std::max(rep.max_excess, radius - bound);
        if (radius > bound + slack) {
            rep.pass = false;
            rep.violations.push_back({t, radius, bound + slack});
        }
    }
    if (history.empty()) rep.max_excess = 0.0;
    return rep;
}

}  // namespace coswave
