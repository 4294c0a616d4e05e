#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace coswave {

struct QuadratureResult {
    double value = 0.0;
    double error_bound = 0.0;
    bool converged = true;
};

namespace detail {

template <class F>
QuadratureResult simpson_recurse(const F& f, double a, double b, double fa, double fm, double fb,
                                 double whole, double tol, int depth, std::size_t& intervals,
                                 std::size_t interval_cap) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || intervals >= interval_cap) {
        return {left + right + delta / 15.0, std::abs(delta) / 15.0, false};
    }
    if (std::abs(delta) <= 15.0 * tol) {
        return {left + right + delta / 15.0, std::abs(delta) / 15.0, true};
    }
    intervals += 2;
    auto l = simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, intervals, interval_cap);
    auto r = simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, intervals, interval_cap);
    return {l.value + r.value, l.error_bound + r.error_bound, l.converged && r.converged};
}

}  // namespace detail

// Adaptive Simpson on [a,b] to absolute tolerance. The interval cap bounds the
// total number of subdivisions; on hitting it the result carries converged=false
// together with the achieved error bound.
template <class F>
QuadratureResult adaptive_simpson(const F& f, double a, double b, double abs_tol = 1e-10,
                                  std::size_t interval_cap = 1000000) {
    if (a == b) return {0.0, 0.0, true};
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    std::size_t intervals = 1;
    return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, abs_tol, 60, intervals, interval_cap);
}

template <class F>
double integrate_or_throw(const F& f, double a, double b, double abs_tol = 1e-10) {
    auto q = adaptive_simpson(f, a, b, abs_tol);
    if (!q.converged) {
        throw std::runtime_error("quadrature did not converge; achieved error bound " +
                                 std::to_string(q.error_bound));
    }
    return q.value;
}

// Safeguarded bisection for a continuous increasing g on [lo,hi] with
// g(lo) <= target <= g(hi). Returns x with |g(x) - target| <= tol.
template <class G>
double bisect_increasing(const G& g, double lo, double hi, double target, double tol = 1e-10) {
    double glo = g(lo) - target;
    double ghi = g(hi) - target;
    if (glo > 0.0 || ghi < 0.0) throw std::invalid_argument("bisect_increasing: target not bracketed");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid) - target;
        if (std::abs(gm) <= tol) return mid;
        if (gm < 0.0) lo = mid; else hi = mid;
        if (hi - lo <= 1e-16 * (1.0 + std::abs(lo))) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace coswave
