#pragma once

// Closed forms, canonicalizing parameter reductions, and the functional
// equation residual.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "fourgamma/core.hpp"
#include "fourgamma/gamma_basics.hpp"

namespace fourgamma {

enum class ReductionRule { ExponentRescale, FullRescale, ScaleOnly };

/// One application of a reduction: F(params)(x) = prefactor · F(new_params)(new_x).
struct ReductionStep {
    double prefactor = 1.0;
    FourGammaParams new_params;
    double new_x = 0.0;
    ReductionRule rule = ReductionRule::ExponentRescale;
};

namespace detail {

inline void require_positive_branch(const FourGammaParams& p, double x) {
    validate_params(p, x);
    if (p.rho < 0.0) throw DomainError("rho", "reductions are defined on the rho > 0 branch");
}

}  // namespace detail

/// Substitution t = s^{k/δ}: changes the leading exponent from δ to k.
inline ReductionStep reduce_exponent(const FourGammaParams& p, double x, double k) {
    detail::require_positive_branch(p, x);
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("k", "must be > 0");
    return {k / p.delta, {k, p.a, k * p.rho / p.delta, p.b}, k * x / p.delta,
            ReductionRule::ExponentRescale};
}

/// Substitution t = (a/new_a)^{1/δ}·s: moves the scale a to new_a.
inline ReductionStep reduce_scale(const FourGammaParams& p, double x, double new_a) {
    detail::require_positive_branch(p, x);
    if (!(new_a > 0.0) || !std::isfinite(new_a)) throw DomainError("new_a", "must be > 0");
    const double ratio = p.a / new_a;
    return {std::pow(ratio, x / p.delta), {p.delta, new_a, p.rho, p.b * std::pow(ratio, p.rho / p.delta)},
            x, ReductionRule::ScaleOnly};
}

/// reduce_exponent followed by reduce_scale.
inline ReductionStep reduce_full(const FourGammaParams& p, double x, double k, double new_a) {
    const ReductionStep first = reduce_exponent(p, x, k);
    const ReductionStep second = reduce_scale(first.new_params, first.new_x, new_a);
    return {first.prefactor * second.prefactor, second.new_params, second.new_x, ReductionRule::FullRescale};
}

/// The t → 1/t image (ρ,b;δ,a) of a ρ > 0 parameter set; F(p)(x) = F(dual)(−x).
inline FourGammaParams dual(const FourGammaParams& p) {
    if (!(p.rho > 0.0)) throw DomainError("rho", "duality needs rho > 0");
    return {p.rho, p.b, p.delta, p.a};
}

/// Value of the ρ → 0 deformation, e^{−1/b}·(a^{x/δ}/δ)·Γ(x/δ).
inline double limit_rho_zero(double delta, double a, double b, double x) {
    if (!(delta > 0.0)) throw DomainError("delta", "must be > 0");
    if (!(a > 0.0)) throw DomainError("a", "must be > 0");
    if (!(b > 0.0)) throw DomainError("b", "must be > 0");
    return std::exp(-1.0 / b) * pk_gamma_closed({a, delta}, x);
}

/// Closed-form value when one applies. On the ρ < 0 branch with |ρ| = δ the
/// exponent collapses to −t^δ·(1/a + 1/b).
inline std::optional<EvalResult> closed_form(const FourGammaParams& p, double x) {
    if (p.rho < 0.0 && std::fabs(-p.rho - p.delta) <= 1e-12 * p.delta) {
        validate_params(p, x);
        const double s = x / p.delta;
        const double v = std::pow(p.a * p.b / (p.a + p.b), s) * gamma(s) / p.delta;
        if (!std::isfinite(v)) throw OverflowError("closed_form");
        const double err = 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + s) * std::fabs(v);
        return EvalResult{v, err, Method::ClosedForm, 1, std::nullopt};
    }
    return std::nullopt;
}

/// Normalized residual of x·F(x) − (δ/a)·F(x+δ) + (ρ/b)·F(x−ρ), which
/// vanishes for the true function (integrate d/dt[t^x·e^{…}] over (0, ∞)).
template <typename Evaluator>
double fundamental_residual(const FourGammaParams& p, double x, Evaluator&& evaluate) {
    detail::require_positive_branch(p, x);
    const double f0 = evaluate(p, x).value;
    const double f_up = evaluate(p, x + p.delta).value;
    const double f_down = evaluate(p, x - p.rho).value;
    const double lhs = x * f0;
    const double up = p.delta / p.a * f_up;
    const double down = p.rho / p.b * f_down;
    const double norm = std::max(std::fabs(lhs), std::fabs(up));
    return (lhs - up + down) / norm;
}

}  // namespace fourgamma
