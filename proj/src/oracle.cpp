#include "coswave/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "coswave/quadrature.hpp"

namespace coswave {

double blowup_tail_time(double p, double M, double rate) {
    if (!(p > 1.0) || !(M > 0.0) || !(rate > 0.0))
        throw std::invalid_argument("blowup_tail_time needs p > 1, M > 0, rate > 0");
    const double c = 2.0 / (p + 1.0);
    const double Mp1 = std::pow(M, p + 1.0);
    const double jac = 2.0 / (p - 1.0);
    // Substitution v = M s^{-2/(p-1)} maps [M, inf) to s in (0, 1]; the
    // transformed integrand is bounded with limit g(0) below.
    const double g0 = jac * std::pow(M, 0.5 * (1.0 - p)) / std::sqrt(c);
    auto g = [&](double s) {
        if (s <= 0.0) return g0;
        const double v = M * std::pow(s, -jac);
        if ((p + 1.0) * std::log(v) > 690.0) return g0;  // v^{p+1} would overflow
        const double denom = std::sqrt(rate * rate + c * (std::pow(v, p + 1.0) - Mp1));
        return M * jac * std::pow(s, -jac - 1.0) / denom;
    };
    const double scale = g0;
    auto q = adaptive_simpson(g, 0.0, 1.0, 1e-12 * std::max(scale, 1.0) + 1e-300);
    return q.value;
}

namespace {

struct OdeDeriv {
    double dv, dw;
};

inline OdeDeriv ode_rhs(double p, double mu, double v, double w) {
    return {w, std::pow(std::abs(v), p) - mu * w};
}

inline void rk4(double p, double mu, double dt, double& v, double& w) {
    const auto k1 = ode_rhs(p, mu, v, w);
    const auto k2 = ode_rhs(p, mu, v + 0.5 * dt * k1.dv, w + 0.5 * dt * k1.dw);
    const auto k3 = ode_rhs(p, mu, v + 0.5 * dt * k2.dv, w + 0.5 * dt * k2.dw);
    const auto k4 = ode_rhs(p, mu, v + dt * k3.dv, w + dt * k3.dw);
    v += dt / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
    w += dt / 6.0 * (k1.dw + 2.0 * k2.dw + 2.0 * k3.dw + k4.dw);
}

}  // namespace

OdeResult ode_blowup_time(const OdeSpec& spec) {
    if (!(spec.p > 1.0)) throw std::invalid_argument("ode oracle needs p > 1");
    if (!(spec.mu >= 0.0)) throw std::invalid_argument("ode oracle needs mu >= 0");
    OdeResult res;
    double v = spec.v0, w = spec.v1, t = 0.0;
    if (v == 0.0 && w == 0.0) {
        res.note = "zero equilibrium";
        return res;
    }
    const double M = spec.threshold;
    const double dt_damping_cap = spec.mu > 0.0 ? 0.2 / spec.mu : 1e300;
    while (t < spec.t_max) {
        double dt = spec.kappa / std::pow(1.0 + std::abs(v), 0.5 * (spec.p - 1.0));
        dt = std::min({dt, dt_damping_cap, spec.t_max - t});
        const double v_before = v, w_before = w;
        rk4(spec.p, spec.mu, dt, v, w);
        if (v >= M) {
            // bisect the substep to the crossing
            double lo = 0.0, hi = dt;
            for (int i = 0; i < 80 && hi - lo > 1e-16 * dt; ++i) {
                const double mid = 0.5 * (lo + hi);
                double vm = v_before, wm = w_before;
                rk4(spec.p, spec.mu, mid, vm, wm);
                if (vm >= M) hi = mid; else lo = mid;
            }
            double vc = v_before, wc = w_before;
            rk4(spec.p, spec.mu, hi, vc, wc);
            res.blew_up = true;
            res.crossing_time = t + hi;
            res.tail_correction = blowup_tail_time(spec.p, M, wc);
            res.blowup_time = res.crossing_time + res.tail_correction;
            return res;
        }
        t += dt;
    }
    res.note = "no blow-up detected";
    return res;
}

double ode_threshold_agreement(const OdeSpec& spec) {
    OdeSpec high = spec;
    high.threshold = 100.0 * spec.threshold;
    const auto a = ode_blowup_time(spec);
    const auto b = ode_blowup_time(high);
    if (!a.blew_up || !b.blew_up) throw std::runtime_error("threshold agreement needs blow-up");
    return std::abs(a.blowup_time - b.blowup_time) / b.blowup_time;
}

std::vector<OdeSweepPoint> ode_lifespan_sweep(double p, double mu, double v0_dir, double v1_dir,
                                              const std::vector<double>& epsilons) {
    if (epsilons.size() < 6) throw std::invalid_argument("sweep needs at least 6 epsilon values");
    for (std::size_t i = 1; i < epsilons.size(); ++i)
        if (!(epsilons[i] < epsilons[i - 1]))
            throw std::invalid_argument("sweep epsilons must be decreasing");
    std::vector<OdeSweepPoint> out;
    out.reserve(epsilons.size());
    for (double eps : epsilons) {
        OdeSpec spec;
        spec.p = p;
        spec.mu = mu;
        spec.v0 = eps * v0_dir;
        spec.v1 = eps * v1_dir;
        const auto r = ode_blowup_time(spec);
        OdeSweepPoint pt;
        pt.epsilon = eps;
        if (r.blew_up) pt.lifespan = r.blowup_time;
        out.push_back(pt);
    }
    return out;
}

}  // namespace coswave
