#pragma once

#include <vector>

#include "coswave/field.hpp"

namespace coswave {

// Smooth cutoff: 1 on [0,1/2], 0 on [1,inf), C-infinity transition built from
// f(x) = exp(-1/x).
double eta(double t);
double eta_prime(double t);
double eta_second(double t);

// Temporal weight psi_tau(t) = eta(t/tau)^(2 p') with p' = p/(p-1).
class TestWeight {
  public:
    TestWeight(double tau, double p);

    double tau() const { return tau_; }
    double pprime() const { return pprime_; }

    double psi(double t) const;
    double psi_prime(double t) const;
    double psi_second(double t) const;
    double psi_star(double t) const;  // eta restricted to the transition band

  private:
    double tau_;
    double p_;
    double pprime_;
    double q_;  // 2 p'
};

struct WeightBoundConstants {
    double c1 = 0.0;  // max |psi'| tau (psi*)^(-1/p)
    double c2 = 0.0;  // max |psi''| tau^2 (psi*)^(-1/p)
    bool finite = true;
};

WeightBoundConstants weight_bounds_check(double tau, double p, int samples);

struct FunctionalReport {
    double tau = 0.0;
    double I_tau = 0.0;  // integral of psi |u|^p
    double J = 0.0;      // eps * integral of mu u0 + u1
    double K1 = 0.0;     // integral of u psi''
    double K2 = 0.0;     // -mu integral of u psi'
    double E_tau = 0.0;
    double residual = 0.0;  // |I + J - K1 - K2|
};

// Trapezoidal time quadrature over stored snapshots, grid sum in space.
// include_source=false evaluates the linear consistency mode (J = K1 + K2).
FunctionalReport compute_functionals(const std::vector<FieldState>& snapshots, const Grid& grid,
                                     double tau, double p, double mu, bool include_source = true);

double E_of_tau(double tau, double p, double mu);

struct CEMargins {
    double hoelder_constant = 0.0;  // (I + J) / (E I^{1/p})
    double closure_constant = 0.0;  // J / E^{p'}
    bool degenerate = false;        // I = 0 (only the closure constant applies)
};

CEMargins check_CE_inequality(const FunctionalReport& report, double tau, double p, double mu);

struct PoincareReport {
    double ratio = 0.0;  // integral |grad u|^p dx / (radius^{-p} integral |u|^p dx)
    double fudge = 0.0;  // 1 - 5 h / radius
    bool degenerate = false;
    bool ok = false;
};

PoincareReport poincare_check(const FieldState& state, const Grid& grid, double p, double radius);

}  // namespace coswave
