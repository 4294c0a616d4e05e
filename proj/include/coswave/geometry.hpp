#pragma once

#include <vector>

#include "coswave/field.hpp"
#include "coswave/scale_factor.hpp"

namespace coswave {

// Influence cone with apex at (T, x0): points (t,x) with |x-x0| < A(T) - A(t).
struct Cone {
    ScaleFactor sf;
    double T = 0.0;
    double x0 = 0.0;
    double horizon_T = 0.0;  // A(T), cached

    Cone(ScaleFactor sf_, double T_, double x0_ = 0.0);
    bool contains(double t, double x) const;
};

// Level-surface time psi(lambda, x), evaluated at r = |x - x0|.
// psi(0, .) = 0 exactly; nondecreasing in lambda, nonincreasing in r.
double cone_psi(const Cone& cone, double lambda, double r);

// theta(lambda0) = sqrt(2 lambda0 A(T) - lambda0^2) / A(T), in (0,1).
double cone_theta(const Cone& cone, double lambda0);

// sqrt(a(psi)) |grad_x psi| by the closed form (the a-factors cancel).
double cone_char_slope(const Cone& cone, double lambda, double r);

// d psi / d lambda; satisfies |psi_lambda| <= 1 / sqrt(a(T)).
double cone_psi_lambda(const Cone& cone, double lambda, double r);

struct SlopeCheck {
    double value = 0.0;
    double bound = 0.0;
    bool ok = false;
};

// Checks sqrt(a(psi)) |grad psi| <= theta(lambda0) for lambda <= lambda0.
SlopeCheck char_slope_bound(const Cone& cone, double lambda, double r, double lambda0);

// Largest grid radius where |u| or |u_t| exceeds tol; 0 when the field is below
// tol everywhere.
double support_radius(const FieldState& state, const Grid& grid, double tol);

struct ContainmentViolation {
    double t = 0.0;
    double radius = 0.0;
    double bound = 0.0;
};

struct ContainmentReport {
    bool pass = true;
    double max_excess = 0.0;  // max over steps of radius - (R + A(t)), <= 0 when clean
    std::vector<ContainmentViolation> violations;
};

// Verifies support_radius(t) <= R + A(t) + slack over a stored history of
// (t, support_radius) pairs.
ContainmentReport check_support_containment(const std::vector<std::pair<double, double>>& history,
                                            double R, const ScaleFactor& sf, double slack);

}  // namespace coswave
