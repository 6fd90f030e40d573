#pragma once

// ₘF₀ series and the hypergeometric form of the ρ < 0 branch.
//
// For integer m = |ρ|/δ, expanding exp(−t^{|ρ|}/b) and splitting
// (x/δ)_{mn} with the Gauss multiplication formula gives
//
//     F(x) = a^{x/δ}Γ(x/δ)/δ · ₘF₀[(x + (r−1)δ)/|ρ|, r = 1..m ; −(a·m)^m / b].
//
// m = 1 is the binomial series (1 − z)^{−α}; for m ≥ 2 the series is only
// asymptotic and is optimally truncated.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "fourgamma/core.hpp"
#include "fourgamma/gamma_basics.hpp"

namespace fourgamma {

struct PFZeroSpec {
    std::vector<double> upper_params;
    double argument = 0.0;

    [[nodiscard]] std::size_t m() const noexcept { return upper_params.size(); }
};

struct PartialSum {
    double value = 0.0;
    std::vector<double> term_magnitudes;
};

namespace detail {

/// t_{n+1}/t_n for Σ ∏ᵣ(αᵣ)ₙ zⁿ/n!.
inline double pf0_ratio(const PFZeroSpec& spec, std::int64_t n) {
    const double dn = static_cast<double>(n);
    double r = spec.argument / (dn + 1.0);
    for (double alpha : spec.upper_params) r *= alpha + dn;
    return r;
}

}  // namespace detail

/// Σ_{n<N} [∏ᵣ(αᵣ)ₙ] zⁿ/n!, with the magnitude of every summed term.
inline PartialSum pf0_partial_sum(const PFZeroSpec& spec, std::int64_t terms) {
    if (terms < 1) throw DomainError("N", "must be >= 1");
    PartialSum out;
    out.term_magnitudes.reserve(static_cast<std::size_t>(terms));
    detail::CompensatedSum sum;
    double t = 1.0;
    for (std::int64_t n = 0; n < terms; ++n) {
        if (!std::isfinite(t)) throw OverflowError("pf0_partial_sum term " + std::to_string(n));
        sum.add(t);
        out.term_magnitudes.push_back(std::fabs(t));
        t *= detail::pf0_ratio(spec, n);
    }
    out.value = sum.value();
    return out;
}

/// Builds the ₘF₀ data for a ρ < 0 parameter set; throws NotApplicable
/// unless |ρ|/δ is a positive integer.
inline PFZeroSpec hypergeometric_spec(const FourGammaParams& p, double x) {
    if (p.rho > 0.0) throw NotApplicable("hypergeometric form needs rho < 0");
    const double ratio = -p.rho / p.delta;
    const double m = std::round(ratio);
    if (m < 1.0 || std::fabs(ratio - m) > 1e-9 * std::max(1.0, ratio))
        throw NotApplicable("|rho|/delta is not a positive integer");
    PFZeroSpec spec;
    for (int r = 1; r <= static_cast<int>(m); ++r)
        spec.upper_params.push_back((x + (r - 1) * p.delta) / -p.rho);
    spec.argument = -std::pow(p.a * ratio, ratio) / p.b;
    return spec;
}

inline EvalResult four_gamma_hypergeometric(const FourGammaParams& p, double x, const EvalOptions& opts) {
    validate_params(p, x);
    validate_options(opts);
    const PFZeroSpec spec = hypergeometric_spec(p, x);

    const double s = x / p.delta;
    const double prefactor = std::exp(s * std::log(p.a) + log_gamma(s)) / p.delta;
    if (!std::isfinite(prefactor)) throw OverflowError("four_gamma_hypergeometric prefactor");

    if (spec.m() == 1) {
        // 1 − z > 1 on this branch, so the binomial form is always defined.
        const double v = prefactor * std::pow(1.0 - spec.argument, -spec.upper_params[0]);
        SeriesDiagnostics diag;
        diag.n_terms = 1;
        diag.max_term_magnitude = std::fabs(v);
        const double err = 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + s) * std::fabs(v);
        return {v, err, Method::Hypergeometric, 1, diag};
    }

    // Asymptotic: stop at the target or at the smallest term, whichever
    // comes first; the first omitted term is the error estimate.
    SeriesDiagnostics diag;
    diag.diverging = true;
    detail::CompensatedSum sum;
    detail::CompensatedSum before_last;
    double t = 1.0;
    double previous = INFINITY;
    double omitted = 0.0;
    for (std::int64_t n = 0;; ++n) {
        if (n >= opts.max_work) {
            throw BudgetExceeded({prefactor * sum.value(), prefactor * std::fabs(t), Method::Hypergeometric, n, diag});
        }
        if (!std::isfinite(t)) throw OverflowError("four_gamma_hypergeometric term");
        const double mag = std::fabs(t);
        ++diag.n_terms;
        if (n > 0 && mag <= opts.target_rel_error * std::fabs(sum.value())) {
            omitted = mag;
            break;
        }
        if (mag >= previous) {
            // The previous term was the smallest; drop it from the sum.
            sum = before_last;
            omitted = previous;
            break;
        }
        before_last = sum;
        sum.add(t);
        diag.max_term_magnitude = std::max(diag.max_term_magnitude, mag);
        previous = mag;
        t *= detail::pf0_ratio(spec, n);
    }

    const double total = sum.value();
    diag.cancellation_digits =
        total != 0.0 ? std::max(0.0, std::log10(diag.max_term_magnitude / std::fabs(total))) : INFINITY;
    EvalResult r{prefactor * total, prefactor * omitted, Method::Hypergeometric, diag.n_terms, diag};
    if (omitted > opts.target_rel_error * std::fabs(total)) throw AsymptoticDominated(r);
    return r;
}

/// Both sides of (α)_{mn} = m^{mn}·∏_{j<m}((α+j)/m)ₙ with α = x/δ.
inline std::pair<double, double> pochhammer_split_check(double x_over_delta, std::int64_t m, std::int64_t n) {
    if (m < 1) throw DomainError("m", "must be >= 1");
    return {pochhammer(x_over_delta, m * n), gauss_multiplication(x_over_delta, m, n)};
}

}  // namespace fourgamma
