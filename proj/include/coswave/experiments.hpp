#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "coswave/solver.hpp"

namespace coswave {

struct SweepRun {
    double epsilon = 0.0;
    RunResult result;
};

// Theorem exponent for the lifespan bound: -(p-1) when mu > 0, -(p-1)/(p+1)
// when mu = 0.
double theorem_exponent(double p, double mu);

// Comparison exponent -(p-1)/2 from the accelerated-FLRW lifespan bound
// (documentation preset).
double flrw_comparison_exponent(double p);

struct SweepFit {
    std::vector<std::pair<double, double>> points;  // (eps, T), decreasing eps
    int tail = 4;
    bool fitted = false;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double theorem_exp = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool monotone = true;  // lifespan nonincreasing in epsilon
};

// PDE runs over a decreasing epsilon list; failures (no blow-up) are recorded,
// not fatal. Runs execute concurrently up to `workers` threads; results come
// back ordered by epsilon.
std::vector<SweepRun> run_sweep(const ProblemSpec& tmpl, const std::vector<double>& epsilons,
                                int workers = 1);

// Least squares on (log eps, log T) restricted to the `tail` smallest epsilons.
SweepFit fit_loglog(const std::vector<std::pair<double, double>>& points, int tail,
                    double theorem_exp, double tolerance);

std::vector<double> geometric_epsilons(double eps0, double ratio, int count);

}  // namespace coswave
