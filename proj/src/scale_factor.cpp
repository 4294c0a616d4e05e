#include "coswave/scale_factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "coswave/quadrature.hpp"

namespace coswave {

namespace {

void require_nonnegative_time(double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("scale factor queried at negative time");
}

}  // namespace

ScaleFactor ScaleFactor::de_sitter(double hubble) {
    if (!(hubble > 0.0)) throw std::invalid_argument("DeSitter rate must be positive");
    ScaleFactor sf;
    sf.kind_ = ScaleFactorKind::DeSitter;
    sf.h_ = hubble;
    return sf;
}

ScaleFactor ScaleFactor::power_law(double a0, double alpha) {
    if (!(a0 > 0.0)) throw std::invalid_argument("PowerLaw amplitude must be positive");
    if (!(alpha > 0.0)) throw std::invalid_argument("PowerLaw exponent must be positive");
    ScaleFactor sf;
    sf.kind_ = ScaleFactorKind::PowerLaw;
    sf.a0_ = a0;
    sf.alpha_ = alpha;
    return sf;
}

ScaleFactor ScaleFactor::constant(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("Constant coefficient must be positive");
    ScaleFactor sf;
    sf.kind_ = ScaleFactorKind::Constant;
    sf.c_ = c;
    return sf;
}

ScaleFactor ScaleFactor::tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw std::invalid_argument("Tabulated needs at least two samples");
    if (samples.front().first != 0.0) throw std::invalid_argument("Tabulated must start at t = 0");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].second > 0.0)) throw std::invalid_argument("Tabulated values must be positive");
        if (i > 0 && !(samples[i].first > samples[i - 1].first))
            throw std::invalid_argument("Tabulated times must be strictly increasing");
    }
    ScaleFactor sf;
    sf.kind_ = ScaleFactorKind::Tabulated;
    sf.table_ = std::move(samples);
    return sf;
}

std::string ScaleFactor::kind_name() const {
    switch (kind_) {
        case ScaleFactorKind::DeSitter: return "de_sitter";
        case ScaleFactorKind::PowerLaw: return "power_law";
        case ScaleFactorKind::Constant: return "constant";
        case ScaleFactorKind::Tabulated: return "tabulated";
    }
    return "unknown";
}

double ScaleFactor::table_last_time() const { return table_.back().first; }

double ScaleFactor::value(double t) const {
    require_nonnegative_time(t);
    switch (kind_) {
        case ScaleFactorKind::DeSitter: return std::exp(-2.0 * h_ * t);
        case ScaleFactorKind::PowerLaw: return a0_ * std::pow(1.0 + t, -alpha_);
        case ScaleFactorKind::Constant: return c_;
        case ScaleFactorKind::Tabulated: {
            if (t > table_last_time())
                throw std::out_of_range("Tabulated scale factor queried beyond last sample");
            auto it = std::lower_bound(table_.begin(), table_.end(), t,
                                       [](const auto& s, double tt) { return s.first < tt; });
            if (it->first == t) return it->second;
            auto hi = it;
            auto lo = it - 1;
            const double w = (t - lo->first) / (hi->first - lo->first);
            return lo->second + w * (hi->second - lo->second);
        }
    }
    throw std::logic_error("unreachable");
}

double ScaleFactor::derivative(double t) const {
    require_nonnegative_time(t);
    switch (kind_) {
        case ScaleFactorKind::DeSitter: return -2.0 * h_ * std::exp(-2.0 * h_ * t);
        case ScaleFactorKind::PowerLaw: return -a0_ * alpha_ * std::pow(1.0 + t, -alpha_ - 1.0);
        case ScaleFactorKind::Constant: return 0.0;
        case ScaleFactorKind::Tabulated: {
            // One-sided difference quotient on the table; approximate.
            const double dt = 1e-6 * std::max(1.0, table_last_time());
            if (t + dt <= table_last_time()) return (value(t + dt) - value(t)) / dt;
            return (value(t) - value(t - dt)) / dt;
        }
    }
    throw std::logic_error("unreachable");
}

double ScaleFactor::sqrt_value(double t) const { return std::sqrt(value(t)); }

double ScaleFactor::horizon(double t) const {
    require_nonnegative_time(t);
    switch (kind_) {
        case ScaleFactorKind::DeSitter: return (1.0 - std::exp(-h_ * t)) / h_;
        case ScaleFactorKind::PowerLaw: {
            const double half = 0.5 * alpha_;
            if (half == 1.0) return std::sqrt(a0_) * std::log1p(t);
            return std::sqrt(a0_) * (std::pow(1.0 + t, 1.0 - half) - 1.0) / (1.0 - half);
        }
        case ScaleFactorKind::Constant: return std::sqrt(c_) * t;
        case ScaleFactorKind::Tabulated: {
            if (t > table_last_time())
                throw std::out_of_range("Tabulated horizon queried beyond last sample");
            return integrate_or_throw([this](double s) { return sqrt_value(s); }, 0.0, t, quad_tol_);
        }
    }
    throw std::logic_error("unreachable");
}

std::optional<double> ScaleFactor::horizon_limit() const {
    switch (kind_) {
        case ScaleFactorKind::DeSitter: return 1.0 / h_;
        case ScaleFactorKind::PowerLaw:
            if (alpha_ > 2.0) return std::sqrt(a0_) * 2.0 / (alpha_ - 2.0);
            return std::nullopt;
        case ScaleFactorKind::Constant: return std::nullopt;
        case ScaleFactorKind::Tabulated:
            // No safe extrapolation beyond the table.
            return std::nullopt;
    }
    return std::nullopt;
}

double ScaleFactor::horizon_inverse(double s) const {
    if (!(s >= 0.0)) throw std::invalid_argument("horizon_inverse needs s >= 0");
    auto limit = horizon_limit();
    if (limit && !(s < *limit)) throw std::invalid_argument("horizon_inverse: s beyond A(inf)");
    if (s == 0.0) return 0.0;
    switch (kind_) {
        case ScaleFactorKind::DeSitter: return -std::log1p(-h_ * s) / h_;
        case ScaleFactorKind::PowerLaw: {
            const double half = 0.5 * alpha_;
            if (half == 1.0) return std::expm1(s / std::sqrt(a0_));
            const double base = 1.0 + s * (1.0 - half) / std::sqrt(a0_);
            if (!(base > 0.0)) throw std::invalid_argument("horizon_inverse: s beyond A(inf)");
            return std::pow(base, 1.0 / (1.0 - half)) - 1.0;
        }
        case ScaleFactorKind::Constant: return s / std::sqrt(c_);
        case ScaleFactorKind::Tabulated: {
            const double tmax = table_last_time();
            const double amax = horizon(tmax);
            if (s > amax) throw std::invalid_argument("horizon_inverse: s beyond tabulated horizon");
            return bisect_increasing([this](double t) { return horizon(t); }, 0.0, tmax, s, 1e-10);
        }
    }
    throw std::logic_error("unreachable");
}

AdmissibilityReport ScaleFactor::check_admissible() const {
    AdmissibilityReport rep;
    switch (kind_) {
        case ScaleFactorKind::DeSitter:
            rep.positive = true;
            rep.nonincreasing = true;
            rep.integrable_root = true;
            break;
        case ScaleFactorKind::PowerLaw:
            rep.positive = true;
            rep.nonincreasing = true;
            rep.integrable_root = alpha_ > 2.0;
            break;
        case ScaleFactorKind::Constant:
            rep.positive = true;
            rep.nonincreasing = true;
            rep.integrable_root = false;
            break;
        case ScaleFactorKind::Tabulated: {
            rep.positive = true;  // enforced at construction
            rep.nonincreasing = true;
            for (std::size_t i = 1; i < table_.size(); ++i)
                if (table_[i].second > table_[i - 1].second) rep.nonincreasing = false;
            rep.integrable_root = false;  // no tail information
            break;
        }
    }
    if (rep.integrable_root) rep.horizon_limit = horizon_limit();
    return rep;
}

}  // namespace coswave
