#include "coswave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "coswave/geometry.hpp"
#include "coswave/oracle.hpp"

namespace coswave {

std::string to_string(Nonlinearity n) {
    switch (n) {
        case Nonlinearity::PowerU: return "power_u";
        case Nonlinearity::PowerGradU: return "power_grad_u";
        case Nonlinearity::None: return "none";
    }
    return "unknown";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::BlewUp: return "blew_up";
        case Verdict::ReachedTmax: return "reached_tmax";
        case Verdict::Quiescent: return "quiescent";
    }
    return "unknown";
}

namespace {

double bump3(double r, double R) {
    if (r >= R) return 0.0;
    const double s = 1.0 - (r / R) * (r / R);
    return s * s * s;
}

double bump2(double r, double R) {
    if (r >= R) return 0.0;
    const double s = 1.0 - (r / R) * (r / R);
    return s * s;
}

}  // namespace

void ProblemSpec::validate() const {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(p > 1.0) && nonlinearity != Nonlinearity::None)
        throw std::invalid_argument("exponent p must exceed 1");
    if (!(mu >= 0.0)) throw std::invalid_argument("damping mu must be nonnegative");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (grid_points < 5) throw std::invalid_argument("grid needs at least 5 points");
    if (!(data.radius > 0.0)) throw std::invalid_argument("support radius R must be positive");
    if (!(domain_radius > data.radius)) throw std::invalid_argument("domain radius L must exceed R");
    if (!(stepping.cfl > 0.0 && stepping.cfl < 1.0))
        throw std::invalid_argument("CFL fraction must lie in (0,1)");
    if (!(stepping.t_max > 0.0)) throw std::invalid_argument("t_max must be positive");

    const auto adm = sf.check_admissible();
    if (!allow_inadmissible && !adm.admissible())
        throw std::invalid_argument("scale factor fails admissibility; set allow_inadmissible for "
                                    "validation-only runs");

    // The cone from the data support must never reach the outer boundary.
    double horizon_reach;
    if (adm.horizon_limit && *adm.horizon_limit <= sf.horizon(stepping.t_max))
        horizon_reach = *adm.horizon_limit;
    else
        horizon_reach = sf.horizon(stepping.t_max);
    if (!(data.radius + horizon_reach < domain_radius))
        throw std::invalid_argument("domain radius L too small: cone R + A(t_max) reaches the boundary");

    // Theorem experiments need the positive-mass sign condition.
    if (!allow_inadmissible && nonlinearity != Nonlinearity::None) {
        const Grid grid = make_grid();
        double mass = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double r = grid.radius(i);
            mass += (mu * data.u0_amp * bump3(r, data.radius) + data.u1_amp * bump2(r, data.radius)) *
                    grid.cell_volume(i);
        }
        if (!(mass > 0.0))
            throw std::invalid_argument("sign condition violated: integral of mu*u0 + u1 must be positive");
    }
}

std::vector<double> discrete_laplacian(const std::vector<double>& u, const Grid& grid) {
    const std::size_t m = grid.size();
    if (u.size() != m) throw std::invalid_argument("field size does not match grid");
    const double h = grid.spacing();
    const double inv_h2 = 1.0 / (h * h);
    std::vector<double> out(m, 0.0);
    if (grid.mode == GridMode::Cartesian1d) {
        for (std::size_t i = 1; i + 1 < m; ++i)
            out[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_h2;
    } else {
        // origin: lim of u_rr + (n-1) u_r / r is n u_rr; symmetric extension u(-h)=u(h)
        out[0] = grid.dim * 2.0 * (u[1] - u[0]) * inv_h2;
        const double inv_2h = 0.5 / h;
        for (std::size_t i = 1; i + 1 < m; ++i) {
            const double r = grid.coord(i);
            out[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_h2 +
                     (grid.dim - 1) / r * (u[i + 1] - u[i - 1]) * inv_2h;
        }
    }
    // outer boundary pinned to zero (support never reaches it)
    out[m - 1] = 0.0;
    if (grid.mode == GridMode::Cartesian1d) out[0] = 0.0;
    return out;
}

std::vector<double> discrete_gradient_abs(const std::vector<double>& u, const Grid& grid) {
    const std::size_t m = grid.size();
    const double h = grid.spacing();
    std::vector<double> g(m, 0.0);
    for (std::size_t i = 1; i + 1 < m; ++i) g[i] = std::abs(u[i + 1] - u[i - 1]) * 0.5 / h;
    if (grid.mode == GridMode::Radial) {
        g[0] = 0.0;  // radial symmetry: u_r(0) = 0
    } else {
        g[0] = std::abs(u[1] - u[0]) / h;
    }
    g[m - 1] = std::abs(u[m - 1] - u[m - 2]) / h;
    return g;
}

FieldDerivative rhs(const FieldState& state, const ProblemSpec& spec, const Grid& grid) {
    const std::size_t m = grid.size();
    const double a = spec.sf.value(state.t);
    FieldDerivative d;
    d.du = state.v;
    d.dv = discrete_laplacian(state.u, grid);
    for (auto& x : d.dv) x *= a;
    switch (spec.nonlinearity) {
        case Nonlinearity::PowerU:
            for (std::size_t i = 0; i < m; ++i)
                d.dv[i] += std::pow(std::abs(state.u[i]), spec.p);
            break;
        case Nonlinearity::PowerGradU: {
            const auto g = discrete_gradient_abs(state.u, grid);
            for (std::size_t i = 0; i < m; ++i) d.dv[i] += std::pow(g[i], spec.p);
            break;
        }
        case Nonlinearity::None:
            break;
    }
    if (spec.mu != 0.0)
        for (std::size_t i = 0; i < m; ++i) d.dv[i] -= spec.mu * state.v[i];
    // homogeneous Dirichlet at the outer boundary
    d.du[m - 1] = 0.0;
    d.dv[m - 1] = 0.0;
    if (grid.mode == GridMode::Cartesian1d) {
        d.du[0] = 0.0;
        d.dv[0] = 0.0;
    }
    return d;
}

FieldState step_rk4(const FieldState& state, const ProblemSpec& spec, const Grid& grid, double dt) {
    const std::size_t m = grid.size();
    auto advanced = [&](const FieldState& base, const FieldDerivative& k, double w) {
        FieldState s;
        s.t = base.t + w;
        s.u.resize(m);
        s.v.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            s.u[i] = base.u[i] + w * k.du[i];
            s.v[i] = base.v[i] + w * k.dv[i];
        }
        return s;
    };
    const auto k1 = rhs(state, spec, grid);
    const auto s2 = advanced(state, k1, 0.5 * dt);
    const auto k2 = rhs(s2, spec, grid);
    const auto s3 = advanced(state, k2, 0.5 * dt);
    const auto k3 = rhs(s3, spec, grid);
    const auto s4 = advanced(state, k3, dt);
    const auto k4 = rhs(s4, spec, grid);
    FieldState out;
    out.t = state.t + dt;
    out.u.resize(m);
    out.v.resize(m);
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < m; ++i) {
        out.u[i] = state.u[i] + w * (k1.du[i] + 2.0 * k2.du[i] + 2.0 * k3.du[i] + k4.du[i]);
        out.v[i] = state.v[i] + w * (k1.dv[i] + 2.0 * k2.dv[i] + 2.0 * k3.dv[i] + k4.dv[i]);
    }
    return out;
}

double controlled_dt(const ProblemSpec& spec, const Grid& grid, double t, double supnorm) {
    const double a = spec.sf.value(t);
    double dt = spec.stepping.cfl * grid.spacing() / std::sqrt(a);
    dt = std::min(dt, spec.stepping.dt_max);
    if (spec.nonlinearity != Nonlinearity::None && supnorm > 0.0) {
        const double cap = spec.stepping.growth_kappa / std::pow(supnorm, spec.p - 1.0);
        dt = std::min(dt, cap);
    }
    return dt;
}

FieldState initial_state(const ProblemSpec& spec, const Grid& grid) {
    FieldState s;
    s.t = 0.0;
    const std::size_t m = grid.size();
    s.u.resize(m);
    s.v.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double r = grid.radius(i);
        s.u[i] = spec.epsilon * spec.data.u0_amp * bump3(r, spec.data.radius);
        s.v[i] = spec.epsilon * spec.data.u1_amp * bump2(r, spec.data.radius);
    }
    return s;
}

double sup_norm(const FieldState& state) {
    double m = 0.0;
    for (double x : state.u) m = std::max(m, std::abs(x));
    return m;
}

double discrete_energy(const FieldState& state, const Grid& grid, double a) {
    const double h = grid.spacing();
    double e = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double gu = (state.u[i + 1] - state.u[i]) / h;  // staggered gradient
        const double vv = 0.5 * (state.v[i] * state.v[i] + state.v[i + 1] * state.v[i + 1]);
        double w = h;
        if (grid.mode == GridMode::Radial) {
            const double rm = 0.5 * (grid.coord(i) + grid.coord(i + 1));
            w = h * sphere_surface_area(grid.dim) * std::pow(rm, grid.dim - 1);
        }
        e += w * (vv + a * gu * gu);
    }
    return e;
}

namespace {

double l1_norm(const FieldState& state, const Grid& grid) {
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) s += std::abs(state.u[i]) * grid.cell_volume(i);
    return s;
}

bool finite(const FieldState& state) {
    for (double x : state.u)
        if (!std::isfinite(x)) return false;
    for (double x : state.v)
        if (!std::isfinite(x)) return false;
    return true;
}

// Locates the sup-norm crossing of M inside one step by bisecting the substep.
double refine_crossing(const FieldState& before, const ProblemSpec& spec, const Grid& grid,
                       double dt, double M) {
    double lo = 0.0, hi = dt;
    for (int i = 0; i < 60 && hi - lo > 1e-14 * dt; ++i) {
        const double mid = 0.5 * (lo + hi);
        const auto s = step_rk4(before, spec, grid, mid);
        if (sup_norm(s) >= M) hi = mid; else lo = mid;
    }
    return before.t + hi;
}

}  // namespace

RunResult run_single(const ProblemSpec& spec, const std::vector<double>& snapshot_times) {
    spec.validate();
    const Grid grid = spec.make_grid();
    RunResult res;
    res.grid = grid;

    FieldState state = initial_state(spec, grid);
    const double sup0 = std::max(sup_norm(state), [&] {
        double m = 0.0;
        for (double x : state.v) m = std::max(m, std::abs(x));
        return m;
    }());
    res.support_tol = spec.support_tol_factor * sup0;
    const double quiescent_level =
        1e-3 * spec.epsilon * std::max(std::abs(spec.data.u0_amp), std::abs(spec.data.u1_amp));

    std::vector<double> snaps = snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    if (!snaps.empty() && (snaps.front() > 0.0)) snaps.insert(snaps.begin(), 0.0);
    std::size_t next_snap = 0;

    const double t_max = spec.stepping.t_max;
    double hist_dt = spec.history_interval;
    if (hist_dt <= 0.0) hist_dt = std::max(t_max / 4096.0, grid.spacing() * spec.stepping.cfl);
    double next_hist = 0.0;

    auto record = [&](double dt_used) {
        HistoryRow row;
        row.t = state.t;
        row.supnorm = sup_norm(state);
        row.l1 = l1_norm(state, grid);
        row.support_radius = res.support_tol > 0.0 ? support_radius(state, grid, res.support_tol) : 0.0;
        row.dt = dt_used;
        res.history.push_back(row);
    };
    auto snap_if_due = [&]() {
        while (next_snap < snaps.size() && state.t >= snaps[next_snap] - 1e-12) {
            res.snapshots.push_back(state);
            ++next_snap;
        }
    };

    record(0.0);
    next_hist = hist_dt;
    snap_if_due();

    if (sup0 == 0.0) {
        res.verdict = Verdict::Quiescent;
        res.termination = "quiescent";
        return res;
    }

    const double M = spec.stepping.blowup_threshold;
    double sup = sup_norm(state);
    double prev_sup = sup;
    double prev_dt = 0.0;

    while (state.t < t_max) {
        double dt = controlled_dt(spec, grid, state.t, sup);
        if (dt < spec.stepping.dt_min) {
            if (sup >= prev_sup) {
                res.verdict = Verdict::BlewUp;
                res.termination = "dt_collapse";
                res.crossing_time = state.t;
                res.lifespan = state.t;
                record(dt);
                return res;
            }
            throw std::runtime_error("step size collapsed without sup-norm growth");
        }
        dt = std::min(dt, t_max - state.t);
        if (next_snap < snaps.size()) dt = std::min(dt, std::max(snaps[next_snap] - state.t, spec.stepping.dt_min));

        const FieldState before = state;
        state = step_rk4(state, spec, grid, dt);
        ++res.steps;
        prev_sup = sup;
        sup = sup_norm(state);
        prev_dt = dt;

        if (!finite(state)) {
            // overflow treated as imminent blow-up
            res.verdict = Verdict::BlewUp;
            res.termination = "overflow";
            res.crossing_time = before.t;
            res.lifespan = before.t;
            return res;
        }
        if (sup >= M) {
            const double t_cross = refine_crossing(before, spec, grid, dt, M);
            res.crossing_time = t_cross;
            res.verdict = Verdict::BlewUp;
            res.termination = "threshold";
            // Sup-norm growth rate at the crossing, for the analytic tail time.
            const double rate = (sup - prev_sup) / dt;
            if (spec.mu == 0.0 && spec.nonlinearity == Nonlinearity::PowerU && rate > 0.0) {
                res.tail_correction = blowup_tail_time(spec.p, M, rate);
                res.lifespan = t_cross + res.tail_correction;
            } else {
                res.lifespan = t_cross;
            }
            record(dt);
            return res;
        }
        if (state.t >= next_hist || state.t >= t_max) {
            record(dt);
            while (next_hist <= state.t) next_hist += hist_dt;
        }
        snap_if_due();

        if (sup < quiescent_level) {
            res.verdict = Verdict::Quiescent;
            res.termination = "quiescent";
            record(dt);
            return res;
        }
    }
    (void)prev_dt;
    res.verdict = Verdict::ReachedTmax;
    res.termination = "t_max";
    return res;
}

SimulationOutcome estimate_lifespan(const ProblemSpec& spec,
                                    const std::vector<double>& snapshot_times) {
    SimulationOutcome out;
    out.primary = run_single(spec, snapshot_times);

    ProblemSpec fine = spec;
    fine.grid_points = 2 * spec.grid_points - 1;
    out.refined = run_single(fine);

    out.verdict = out.primary.verdict;
    out.lifespan = out.primary.lifespan;
    if (out.primary.verdict == Verdict::BlewUp && out.refined->verdict == Verdict::BlewUp) {
        const double a = *out.primary.lifespan;
        const double b = *out.refined->lifespan;
        out.refinement_rel_diff = std::abs(a - b) / std::max(b, 1e-300);
        out.refinement_consistent = out.refinement_rel_diff <= 0.05;
    }
    return out;
}

}  // namespace coswave
