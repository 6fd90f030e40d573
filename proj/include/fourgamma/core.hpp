#pragma once

// Shared domain types, errors and option validation for the four-parameter
// gamma function
//
//     F(x) = Γ(δ,a;ρ,b)(x) = ∫₀^∞ t^{x−1} exp(−t^δ/a − t^{−ρ}/b) dt.
//
// The sign of ρ selects the branch: ρ > 0 is the two-sided Krätzel form,
// ρ < 0 gives exp(−t^δ/a − t^{|ρ|}/b).

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fourgamma {

struct FourGammaParams {
    double delta = 1.0;  // exponent of the decaying-at-infinity term
    double a = 1.0;      // scale of t^δ
    double rho = 1.0;    // signed exponent of the second term
    double b = 1.0;      // scale of the second term

    friend bool operator==(const FourGammaParams&, const FourGammaParams&) = default;
};

enum class Branch { PositiveRho, NegativeRho };

enum class Method { Auto, Quadrature, Series, Hypergeometric, ClosedForm };

inline std::string_view to_string(Method m) {
    switch (m) {
        case Method::Auto: return "auto";
        case Method::Quadrature: return "quadrature";
        case Method::Series: return "series";
        case Method::Hypergeometric: return "hypergeometric";
        case Method::ClosedForm: return "closed_form";
    }
    return "unknown";
}

inline std::optional<Method> parse_method(std::string_view s) {
    if (s == "auto") return Method::Auto;
    if (s == "quadrature" || s == "quad") return Method::Quadrature;
    if (s == "series") return Method::Series;
    if (s == "hypergeometric" || s == "hypergeom") return Method::Hypergeometric;
    if (s == "closed_form" || s == "closed-form") return Method::ClosedForm;
    return std::nullopt;
}

struct EvalOptions {
    double target_rel_error = 1e-10;
    std::int64_t max_work = 1'000'000;
    Method method = Method::Auto;
};

/// Bookkeeping for the resummed series evaluators.
struct SeriesDiagnostics {
    std::int64_t n_terms = 0;
    double max_term_magnitude = 0.0;
    double cancellation_digits = 0.0;  // log10(max_term / |sum|), clamped at 0
    std::vector<std::int64_t> pole_hits;
    bool diverging = false;  // asymptotic regime; value is optimally truncated
};

struct EvalResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;  // estimate, not a bound
    Method method_used = Method::Auto;
    std::int64_t work_used = 0;
    std::optional<SeriesDiagnostics> diagnostics;
};

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    [[nodiscard]] virtual std::string_view kind() const noexcept = 0;
};

class DomainError : public Error {
public:
    explicit DomainError(std::string field, const std::string& detail = {})
        : Error("DomainError: " + field + (detail.empty() ? "" : " (" + detail + ")")),
          field_(std::move(field)) {}
    [[nodiscard]] std::string_view kind() const noexcept override { return "DomainError"; }
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class PoleError : public Error {
public:
    explicit PoleError(double where, std::int64_t index = -1)
        : Error("PoleError: gamma pole at argument " + std::to_string(where)),
          where_(where), index_(index) {}
    [[nodiscard]] std::string_view kind() const noexcept override { return "PoleError"; }
    [[nodiscard]] double where() const noexcept { return where_; }
    /// Series term index that hit the pole, or -1 when not applicable.
    [[nodiscard]] std::int64_t index() const noexcept { return index_; }

private:
    double where_;
    std::int64_t index_;
};

class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& what) : Error("OverflowError: " + what) {}
    [[nodiscard]] std::string_view kind() const noexcept override { return "OverflowError"; }
};

class NonFiniteIntegrand : public Error {
public:
    explicit NonFiniteIntegrand(double node)
        : Error("NonFiniteIntegrand: integrand not finite at node " + std::to_string(node)) {}
    [[nodiscard]] std::string_view kind() const noexcept override { return "NonFiniteIntegrand"; }
};

class NotApplicable : public Error {
public:
    explicit NotApplicable(const std::string& why) : Error("NotApplicable: " + why) {}
    [[nodiscard]] std::string_view kind() const noexcept override { return "NotApplicable"; }
};

class SeriesInapplicable : public Error {
public:
    SeriesInapplicable(std::int64_t pole_index, const std::string& why)
        : Error("SeriesInapplicable: " + why + " at term " + std::to_string(pole_index)),
          pole_index_(pole_index) {}
    [[nodiscard]] std::string_view kind() const noexcept override { return "SeriesInapplicable"; }
    [[nodiscard]] std::int64_t pole_index() const noexcept { return pole_index_; }

private:
    std::int64_t pole_index_;
};

/// Base for failures that still produce a usable (but insufficiently
/// accurate) answer; the partial result travels with the exception.
class PartialResultError : public Error {
public:
    PartialResultError(const std::string& what, EvalResult partial)
        : Error(what), partial_(std::move(partial)) {}
    [[nodiscard]] const EvalResult& partial() const noexcept { return partial_; }

private:
    EvalResult partial_;
};

class BudgetExceeded : public PartialResultError {
public:
    explicit BudgetExceeded(EvalResult partial)
        : PartialResultError("BudgetExceeded: error estimate above target at work limit",
                             std::move(partial)) {}
    [[nodiscard]] std::string_view kind() const noexcept override { return "BudgetExceeded"; }
};

class AsymptoticDominated : public PartialResultError {
public:
    explicit AsymptoticDominated(EvalResult partial)
        : PartialResultError("AsymptoticDominated: smallest term exceeds target accuracy",
                             std::move(partial)) {}
    [[nodiscard]] std::string_view kind() const noexcept override { return "AsymptoticDominated"; }
};

// ---------------------------------------------------------------------------
// Validation

inline Branch branch_of(const FourGammaParams& p) {
    return p.rho > 0.0 ? Branch::PositiveRho : Branch::NegativeRho;
}

/// Checks the parameter invariants and the admissibility of x for the
/// branch selected by the sign of rho. Returns the branch on success.
inline Branch validate_params(const FourGammaParams& p, double x) {
    auto check = [](double v, const char* name) {
        if (!std::isfinite(v)) throw DomainError(name, "not finite");
    };
    check(p.delta, "delta");
    check(p.a, "a");
    check(p.rho, "rho");
    check(p.b, "b");
    check(x, "x");
    if (p.delta <= 0.0) throw DomainError("delta", "must be > 0");
    if (p.a <= 0.0) throw DomainError("a", "must be > 0");
    if (p.rho == 0.0) throw DomainError("rho", "must be nonzero");
    if (p.b <= 0.0) throw DomainError("b", "must be > 0");
    // On the negative branch the integrand behaves like t^{x-1} at t -> 0.
    if (p.rho < 0.0 && x <= 0.0) throw DomainError("x", "must be > 0 when rho < 0");
    return branch_of(p);
}

inline void validate_options(const EvalOptions& o) {
    if (!(o.target_rel_error > 0.0 && o.target_rel_error <= 0.1))
        throw DomainError("target_rel_error", "must lie in (0, 0.1]");
    if (o.max_work < 16) throw DomainError("max_work", "must be >= 16");
}

namespace detail {

/// Neumaier's variant of compensated summation; order-dependent but
/// deterministic.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline constexpr double kPi = 3.14159265358979323846264338327950288;

}  // namespace detail
}  // namespace fourgamma
