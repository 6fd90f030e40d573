#pragma once

// Double-exponential quadrature on (0, ∞) and the reference evaluator of
// the defining integral.
//
// The semi-infinite range is mapped with t = t₀·exp(w·sinh s), so that an
// integrand decaying at least algebraically at t → 0 and exponentially at
// t → ∞ decays doubly exponentially in s. The transformed integrand is then
// summed with the trapezoidal rule, halving the step until two successive
// levels agree.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "fourgamma/core.hpp"

namespace fourgamma {

struct QuadratureReport {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::int64_t nodes_used = 0;
    int refinement_levels = 0;
    std::vector<double> level_deltas;  // |change| at each refinement level
};

namespace detail {

inline constexpr double kInitialStep = 0.5;
inline constexpr double kMaxAbscissa = 30.0;
inline constexpr double kTailRatio = 1e-18;
inline constexpr int kMinLevels = 2;
inline constexpr int kMaxLevels = 24;

/// Trapezoidal sums of g over the real line with level-doubling refinement.
/// g must decay doubly exponentially in both directions.
template <typename G>
QuadratureReport integrate_real_line(G&& g, const EvalOptions& opts) {
    std::int64_t nodes = 0;
    auto eval = [&](double s) {
        const double v = g(s);
        ++nodes;
        if (!std::isfinite(v)) throw NonFiniteIntegrand(s);
        return v;
    };

    // Level 0 also fixes the truncation of the abscissa range.
    const double h0 = kInitialStep;
    CompensatedSum level0;
    const double center = eval(0.0);
    level0.add(center);
    double peak = std::fabs(center);

    auto scan = [&](double direction) {
        int small_run = 0;
        std::int64_t j = 1;
        for (; j * h0 <= kMaxAbscissa; ++j) {
            const double v = eval(direction * static_cast<double>(j) * h0);
            level0.add(v);
            peak = std::max(peak, std::fabs(v));
            small_run = std::fabs(v) <= kTailRatio * peak ? small_run + 1 : 0;
            if (small_run >= 2) break;
        }
        return std::min(static_cast<double>(j) * h0, kMaxAbscissa);
    };
    const double right = scan(1.0);
    const double left = scan(-1.0);

    QuadratureReport report;
    std::vector<double> deltas;
    double estimate = h0 * level0.value();
    double delta = std::fabs(estimate);
    double h = h0;

    for (int level = 1; level <= kMaxLevels; ++level) {
        h *= 0.5;
        const auto first = static_cast<std::int64_t>(std::ceil((-left / h - 1.0) / 2.0));
        const auto last = static_cast<std::int64_t>(std::floor((right / h - 1.0) / 2.0));
        const std::int64_t count = std::max<std::int64_t>(0, last - first + 1);
        if (nodes + count > opts.max_work) {
            report = {estimate, delta, nodes, level - 1, deltas};
            break;
        }
        CompensatedSum fresh;
        for (std::int64_t i = first; i <= last; ++i)
            fresh.add(eval(static_cast<double>(2 * i + 1) * h));
        const double refined = 0.5 * estimate + h * fresh.value();
        delta = std::fabs(refined - estimate);
        estimate = refined;
        deltas.push_back(delta);
        report = {estimate, delta, nodes, level, deltas};
        if (level >= kMinLevels && delta <= opts.target_rel_error * std::fabs(estimate)) return report;
    }
    throw BudgetExceeded(EvalResult{report.value, report.abs_error_estimate, Method::Quadrature,
                                    report.nodes_used, std::nullopt});
}

}  // namespace detail

/// ∫₀^∞ f(t) dt for a positive integrand that decays at both ends.
/// `center` and `log_width` place and scale the transform in ln t.
template <typename F>
QuadratureReport integrate_semi_infinite(F&& f, const EvalOptions& opts, double center = 1.0,
                                         double log_width = 1.0) {
    validate_options(opts);
    if (!(center > 0.0) || !(log_width > 0.0)) throw DomainError("center", "transform must be positive");
    auto g = [&](double s) {
        const double t = center * std::exp(log_width * std::sinh(s));
        if (t == 0.0 || std::isinf(t)) return 0.0;
        return f(t) * t * log_width * std::cosh(s);
    };
    return detail::integrate_real_line(g, opts);
}

namespace detail {

/// Exponent of the integrand in u = ln t, including the Jacobian:
/// t^{x−1} dt e^{…} = exp(x·u − e^{δu}/a − e^{−ρu}/b) du.
struct LogIntegrand {
    FourGammaParams p;
    double x;

    [[nodiscard]] double operator()(double u) const {
        return x * u - std::exp(p.delta * u) / p.a - std::exp(-p.rho * u) / p.b;
    }
    [[nodiscard]] double slope(double u) const {
        return x - p.delta / p.a * std::exp(p.delta * u) + p.rho / p.b * std::exp(-p.rho * u);
    }
    [[nodiscard]] double curvature(double u) const {
        return -p.delta * p.delta / p.a * std::exp(p.delta * u) -
               p.rho * p.rho / p.b * std::exp(-p.rho * u);
    }
};

/// Stationary point of the (strictly concave) exponent by bracketing and
/// bisection.
inline double stationary_point(const LogIntegrand& phi) {
    double lo = 0.0;
    double hi = 0.0;
    double step = 1.0;
    if (phi.slope(0.0) > 0.0) {
        for (int i = 0; i < 80 && phi.slope(hi) > 0.0; ++i, step *= 2.0) {
            lo = hi;
            hi += step;
        }
    } else {
        for (int i = 0; i < 80 && phi.slope(lo) <= 0.0; ++i, step *= 2.0) {
            hi = lo;
            lo -= step;
        }
    }
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (phi.slope(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Reference evaluation of Γ(δ,a;ρ,b)(x) by quadrature of the defining
/// integral, centered on the peak of the integrand in ln t.
inline EvalResult four_gamma_quadrature(const FourGammaParams& p, double x, const EvalOptions& opts) {
    validate_params(p, x);
    validate_options(opts);

    const detail::LogIntegrand phi{p, x};
    const double u0 = detail::stationary_point(phi);
    const double phi0 = phi(u0);
    const double width = std::clamp(1.0 / std::sqrt(-phi.curvature(u0)), 1e-8, 1e8);

    auto g = [&](double s) {
        const double e = phi(u0 + width * std::sinh(s)) - phi0;
        if (e == -INFINITY) return 0.0;
        return std::exp(e) * width * std::cosh(s);
    };

    const double scale = std::exp(phi0);
    if (!std::isfinite(scale)) throw OverflowError("four_gamma_quadrature: integrand peak overflows");

    auto scaled = [&](const QuadratureReport& r) {
        return EvalResult{scale * r.value, scale * r.abs_error_estimate, Method::Quadrature,
                          r.nodes_used, std::nullopt};
    };
    try {
        return scaled(detail::integrate_real_line(g, opts));
    } catch (const BudgetExceeded& e) {
        const auto& part = e.partial();
        throw BudgetExceeded(scaled({part.value, part.abs_error_estimate, part.work_used, 0, {}}));
    }
}

}  // namespace fourgamma
