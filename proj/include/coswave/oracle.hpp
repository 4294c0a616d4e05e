#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coswave {

// Spatially flat companion ODE v'' + mu v' = |v|^p; realizes the same lifespan
// exponents as the PDE once the dynamics decouple, and serves as the
// independent oracle for the sweep harness.
struct OdeSpec {
    double p = 2.0;
    double mu = 0.0;
    double v0 = 1.0;
    double v1 = 1.0;
    double threshold = 1e8;  // M
    double kappa = 0.05;     // dt = kappa / (1 + |v|)^((p-1)/2)
    double t_max = 1e6;
};

struct OdeResult {
    bool blew_up = false;
    double crossing_time = 0.0;
    double tail_correction = 0.0;
    double blowup_time = 0.0;  // crossing + tail
    std::string note;
};

// Residual time from the threshold crossing to the singularity, by the energy
// identity: integral over v in [M, inf) of dv / sqrt(rate^2 + 2(v^{p+1}-M^{p+1})/(p+1)),
// where rate = v'(M).
double blowup_tail_time(double p, double M, double rate);

OdeResult ode_blowup_time(const OdeSpec& spec);

// Relative change of the blow-up time when the threshold moves M -> 100 M.
double ode_threshold_agreement(const OdeSpec& spec);

struct OdeSweepPoint {
    double epsilon = 0.0;
    std::optional<double> lifespan;  // absent when no blow-up within t_max
};

// Blow-up times for data (eps*v0_dir, eps*v1_dir) over a decreasing epsilon list.
std::vector<OdeSweepPoint> ode_lifespan_sweep(double p, double mu, double v0_dir, double v1_dir,
                                              const std::vector<double>& epsilons);

}  // namespace coswave
