#include "coswave/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace coswave {

double theorem_exponent(double p, double mu) {
    if (!(p > 1.0)) throw std::invalid_argument("theorem exponent needs p > 1");
    return mu > 0.0 ? -(p - 1.0) : -(p - 1.0) / (p + 1.0);
}

double flrw_comparison_exponent(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("comparison exponent needs p > 1");
    return -(p - 1.0) / 2.0;
}

std::vector<double> geometric_epsilons(double eps0, double ratio, int count) {
    if (!(eps0 > 0.0) || !(ratio > 0.0 && ratio < 1.0) || count < 1)
        throw std::invalid_argument("geometric_epsilons needs eps0 > 0, ratio in (0,1), count >= 1");
    std::vector<double> out(count);
    double e = eps0;
    for (int k = 0; k < count; ++k, e *= ratio) out[k] = e;
    return out;
}

std::vector<SweepRun> run_sweep(const ProblemSpec& tmpl, const std::vector<double>& epsilons,
                                int workers) {
    if (epsilons.size() < 6) throw std::invalid_argument("sweep needs at least 6 epsilon values");
    for (std::size_t i = 1; i < epsilons.size(); ++i)
        if (!(epsilons[i] < epsilons[i - 1]))
            throw std::invalid_argument("sweep epsilons must be decreasing");
    {
        ProblemSpec probe = tmpl;
        probe.epsilon = epsilons.front();
        probe.validate();
    }

    std::vector<SweepRun> out(epsilons.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= epsilons.size()) return;
            ProblemSpec spec = tmpl;
            spec.epsilon = epsilons[k];
            out[k].epsilon = epsilons[k];
            out[k].result = run_single(spec);
        }
    };
    const int nthreads = std::max(1, std::min<int>(workers, int(epsilons.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

SweepFit fit_loglog(const std::vector<std::pair<double, double>>& points, int tail,
                    double theorem_exp, double tolerance) {
    SweepFit fit;
    fit.points = points;
    std::sort(fit.points.begin(), fit.points.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    fit.tail = tail;
    fit.theorem_exp = theorem_exp;
    fit.tolerance = tolerance;
    if (tail < 4) throw std::invalid_argument("fit tail must be >= 4");
    if (int(fit.points.size()) < tail) return fit;  // no fit
    for (const auto& [e, T] : fit.points)
        if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("fit needs finite positive lifespans");

    // points run from largest to smallest epsilon, so lifespans must not drop
    for (std::size_t i = 1; i < fit.points.size(); ++i)
        if (fit.points[i].second < fit.points[i - 1].second * (1.0 - 1e-12)) fit.monotone = false;

    const std::size_t start = fit.points.size() - std::size_t(tail);
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = start; i < fit.points.size(); ++i) {
        const double x = std::log(fit.points[i].first);
        const double y = std::log(fit.points[i].second);
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
    }
    const double n = double(tail);
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    const double ss_tot = syy - sy * sy / n;
    double ss_res = 0.0;
    for (std::size_t i = start; i < fit.points.size(); ++i) {
        const double x = std::log(fit.points[i].first);
        const double y = std::log(fit.points[i].second);
        const double e = y - (fit.slope * x + fit.intercept);
        ss_res += e * e;
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.fitted = true;
    fit.pass = std::abs(fit.slope - theorem_exp) <= tolerance;
    return fit;
}

}  // namespace coswave
