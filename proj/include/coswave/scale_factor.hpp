#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coswave {

enum class ScaleFactorKind { DeSitter, PowerLaw, Constant, Tabulated };

struct AdmissibilityReport {
    bool positive = false;           // a(t) > 0
    bool nonincreasing = false;      // a'(t) <= 0
    bool integrable_root = false;    // integral of sqrt(a) over [0,inf) finite
    std::optional<double> horizon_limit;  // A(inf) when finite
    bool admissible() const { return positive && nonincreasing && integrable_root; }
};

// Time-dependent propagation coefficient a(t) together with the light-cone
// radius A(t) = integral of sqrt(a) from 0 to t. Immutable after construction.
class ScaleFactor {
  public:
    static ScaleFactor de_sitter(double hubble);                 // a(t) = exp(-2 H t)
    static ScaleFactor power_law(double a0, double alpha);       // a(t) = a0 (1+t)^(-alpha)
    static ScaleFactor constant(double c);                       // a(t) = c
    // Piecewise-linear table of (t, a) samples; t strictly increasing, a > 0.
    static ScaleFactor tabulated(std::vector<std::pair<double, double>> samples);

    ScaleFactorKind kind() const { return kind_; }
    std::string kind_name() const;

    double value(double t) const;       // a(t), t >= 0
    double derivative(double t) const;  // a'(t); one-sided difference quotient for Tabulated
    bool derivative_is_approximate() const { return kind_ == ScaleFactorKind::Tabulated; }

    double horizon(double t) const;                 // A(t)
    std::optional<double> horizon_limit() const;    // A(inf), nullopt when infinite
    double horizon_inverse(double s) const;         // t with A(t) = s, 0 <= s < A(inf)

    AdmissibilityReport check_admissible() const;

    // Parameter access for serialization.
    double hubble() const { return h_; }
    double amplitude() const { return a0_; }
    double exponent() const { return alpha_; }
    double constant_value() const { return c_; }
    const std::vector<std::pair<double, double>>& table() const { return table_; }

    double quadrature_tolerance() const { return quad_tol_; }

  private:
    ScaleFactor() = default;

    double sqrt_value(double t) const;
    double table_last_time() const;

    ScaleFactorKind kind_ = ScaleFactorKind::Constant;
    double h_ = 0.0;      // DeSitter rate
    double a0_ = 0.0;     // PowerLaw amplitude
    double alpha_ = 0.0;  // PowerLaw exponent
    double c_ = 0.0;      // Constant value
    std::vector<std::pair<double, double>> table_;
    double quad_tol_ = 1e-10;
};

}  // namespace coswave
