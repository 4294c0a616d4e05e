#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coswave/field.hpp"
#include "coswave/scale_factor.hpp"

namespace coswave {

enum class Nonlinearity { PowerU, PowerGradU, None };
enum class Verdict { BlewUp, ReachedTmax, Quiescent };

std::string to_string(Nonlinearity n);
std::string to_string(Verdict v);

// Compactly supported bump data: u0(x) = u0_amp (1-(r/R)^2)^3 (C2 at the edge),
// u1(x) = u1_amp (1-(r/R)^2)^2 (C1 at the edge), both zero for r > R and scaled
// by epsilon at run start.
struct InitialData {
    double radius = 1.0;  // R
    double u0_amp = 1.0;
    double u1_amp = 1.0;
};

struct Stepping {
    double cfl = 0.25;                // dt <= cfl * h / sqrt(a(t))
    double dt_min = 1e-10;
    double dt_max = 0.02;
    double blowup_threshold = 1e8;    // M
    double growth_kappa = 0.1;        // dt <= kappa / supnorm^(p-1)
    double t_max = 50.0;
};

struct ProblemSpec {
    int dim = 3;
    double p = 2.0;
    double mu = 0.0;
    double epsilon = 1.0;
    Nonlinearity nonlinearity = Nonlinearity::PowerU;
    InitialData data;
    ScaleFactor sf = ScaleFactor::de_sitter(1.0);
    double domain_radius = 3.0;  // L
    int grid_points = 801;       // N
    Stepping stepping;
    double support_tol_factor = 1e-12;  // support threshold = factor * initial sup-norm
    double history_interval = 0.0;      // 0 -> automatic
    bool allow_inadmissible = false;    // validation override (e.g. d'Alembert checks)

    GridMode mode() const { return dim == 1 ? GridMode::Cartesian1d : GridMode::Radial; }
    Grid make_grid() const { return Grid{mode(), dim, domain_radius, grid_points}; }
    // Throws std::invalid_argument on violated invariants (admissibility, sign
    // condition, cone-fits-grid).
    void validate() const;
};

struct HistoryRow {
    double t = 0.0;
    double supnorm = 0.0;
    double l1 = 0.0;
    double support_radius = 0.0;
    double dt = 0.0;
};

struct RunResult {
    Verdict verdict = Verdict::ReachedTmax;
    std::optional<double> lifespan;
    double crossing_time = 0.0;
    double tail_correction = 0.0;
    std::string termination;  // "threshold", "dt_collapse", "t_max", "quiescent"
    std::size_t steps = 0;
    std::vector<HistoryRow> history;
    std::vector<FieldState> snapshots;
    double support_tol = 0.0;
    Grid grid;
};

struct SimulationOutcome {
    Verdict verdict = Verdict::ReachedTmax;
    std::optional<double> lifespan;
    RunResult primary;
    std::optional<RunResult> refined;      // at 2N-1 points
    double refinement_rel_diff = 0.0;      // |T_N - T_2N| / T_2N when both blew up
    bool refinement_consistent = false;
};

// Second-order centered Laplacian. Radial mode uses u_rr + (n-1) u_r / r with
// the origin limit n u_rr; outer boundary pinned to zero.
std::vector<double> discrete_laplacian(const std::vector<double>& u, const Grid& grid);

// Centered gradient magnitude |u_x| (one-sided at the boundary rows).
std::vector<double> discrete_gradient_abs(const std::vector<double>& u, const Grid& grid);

struct FieldDerivative {
    std::vector<double> du;
    std::vector<double> dv;
};

FieldDerivative rhs(const FieldState& state, const ProblemSpec& spec, const Grid& grid);

// One classical RK4 step of size dt.
FieldState step_rk4(const FieldState& state, const ProblemSpec& spec, const Grid& grid, double dt);

// Step size from the CFL bound, the growth limiter and dt_max.
double controlled_dt(const ProblemSpec& spec, const Grid& grid, double t, double supnorm);

FieldState initial_state(const ProblemSpec& spec, const Grid& grid);

double sup_norm(const FieldState& state);

// Discrete energy integral of v^2 + a |grad u|^2 (validation diagnostics).
double discrete_energy(const FieldState& state, const Grid& grid, double a);

// Integrates a single run. snapshot_times requests stored full fields at the
// first step reaching each time (t = 0 is always stored when any are given).
RunResult run_single(const ProblemSpec& spec, const std::vector<double>& snapshot_times = {});

// Runs at N and 2N-1 points and reports both lifespans. Snapshots, when
// requested, are stored for the primary run only.
SimulationOutcome estimate_lifespan(const ProblemSpec& spec,
                                    const std::vector<double>& snapshot_times = {});

}  // namespace coswave
