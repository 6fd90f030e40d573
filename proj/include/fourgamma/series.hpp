#pragma once

// Gamma-series evaluation of Γ(δ,a;ρ,b)(x).
//
// Expanding exp(−t^{−ρ}/b) and integrating term by term gives
//
//     A(x) = Σₙ (−1)ⁿ/(n!·bⁿ) · a^{(x−ρn)/δ}/δ · Γ((x−ρn)/δ).
//
// On the ρ < 0 branch A(x) is the whole answer (convergent for |ρ| < δ,
// asymptotic for |ρ| > δ). On the ρ > 0 branch A(x) only collects the
// residues at s = −n of the Mellin–Barnes integrand
// Γ(s)·Γ((x+ρs)/δ)·b^s·a^{(x+ρs)/δ}/δ; the residues at the poles of the
// second gamma factor, s = −(x+δk)/ρ, contribute the complementary family
//
//     C(x) = Σₖ (−1)ᵏ/(k!·ρ) · Γ(−(x+δk)/ρ) · b^{−(x+δk)/ρ} · a^{−k},
//
// and F(x) = A(x) + C(x). The two pole families collide exactly when
// (x−ρn)/δ is a nonpositive integer; there the pair is replaced by the
// residue of the double pole.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

#include "fourgamma/core.hpp"
#include "fourgamma/gamma_basics.hpp"

namespace fourgamma {

inline constexpr double kPoleTolerance = 1e-9;
inline constexpr double kNearPoleTolerance = 1e-6;
inline constexpr double kCancellationLimitDigits = 10.0;  // double digits minus 6

struct SeriesApplicability {
    bool applicable = true;
    std::optional<std::int64_t> first_pole;
};

namespace detail {

/// Distance of z from the nearest nonpositive integer, or +inf when z is
/// clearly positive.
inline double pole_distance(double z) {
    if (z > 0.5) return std::numeric_limits<double>::infinity();
    return std::fabs(z - std::round(z));
}

inline double primary_argument(const FourGammaParams& p, double x, std::int64_t n) {
    return (x - p.rho * static_cast<double>(n)) / p.delta;
}

inline SignedLog primary_term_log(const FourGammaParams& p, double x, std::int64_t n) {
    const double arg = primary_argument(p, x, n);
    if (pole_distance(arg) <= kPoleTolerance) throw PoleError(arg, n);
    const double dn = static_cast<double>(n);
    const SignedLog g = log_abs_gamma(arg);
    const double log_abs = -log_gamma(dn + 1.0) - dn * std::log(p.b) + arg * std::log(p.a) -
                           std::log(p.delta) + g.log_abs;
    const int sign = (n % 2 == 0 ? 1 : -1) * g.sign;
    return {log_abs, sign};
}

inline double complementary_argument(const FourGammaParams& p, double x, std::int64_t k) {
    return -(x + p.delta * static_cast<double>(k)) / p.rho;
}

inline SignedLog complementary_term_log(const FourGammaParams& p, double x, std::int64_t k) {
    const double s = complementary_argument(p, x, k);
    if (pole_distance(s) <= kPoleTolerance) throw PoleError(s, static_cast<std::int64_t>(-std::round(s)));
    const double dk = static_cast<double>(k);
    const SignedLog g = log_abs_gamma(s);
    const double log_abs =
        -std::log(p.rho) - log_gamma(dk + 1.0) + g.log_abs + s * std::log(p.b) - dk * std::log(p.a);
    const int sign = (k % 2 == 0 ? 1 : -1) * g.sign;
    return {log_abs, sign};
}

inline double to_value(const SignedLog& l) { return l.sign * std::exp(l.log_abs); }

}  // namespace detail

/// n-th term (−1)ⁿ/(n!bⁿ)·a^{(x−ρn)/δ}/δ·Γ((x−ρn)/δ) of the gamma series.
inline double series_term(const FourGammaParams& p, double x, std::int64_t n) {
    validate_params(p, x);
    if (n < 0) throw DomainError("n", "must be >= 0");
    return detail::to_value(detail::primary_term_log(p, x, n));
}

/// k-th term of the complementary residue family (ρ > 0 only).
inline double complementary_term(const FourGammaParams& p, double x, std::int64_t k) {
    validate_params(p, x);
    if (p.rho < 0.0) throw NotApplicable("complementary family exists only for rho > 0");
    if (k < 0) throw DomainError("k", "must be >= 0");
    return detail::to_value(detail::complementary_term_log(p, x, k));
}

/// series_term with Γ replaced by its truncated Euler product.
inline double series_term_euler(const FourGammaParams& p, double x, std::int64_t n, std::int64_t terms) {
    validate_params(p, x);
    if (n < 0) throw DomainError("n", "must be >= 0");
    const double arg = detail::primary_argument(p, x, n);
    const double dn = static_cast<double>(n);
    const double scale = std::exp(x / p.delta * std::log(p.a) - log_gamma(dn + 1.0) +
                                  dn * (-p.rho / p.delta * std::log(p.a) - std::log(p.b))) /
                         p.delta;
    return (n % 2 == 0 ? 1.0 : -1.0) * scale * gamma_euler_product(arg, terms);
}

/// Scans terms 0..horizon for gamma arguments sitting on a pole.
inline SeriesApplicability series_applicable(const FourGammaParams& p, double x, std::int64_t horizon) {
    for (std::int64_t n = 0; n <= horizon; ++n) {
        if (detail::pole_distance(detail::primary_argument(p, x, n)) <= kPoleTolerance)
            return {false, n};
    }
    return {true, std::nullopt};
}

namespace detail {

struct SeriesAccumulator {
    CompensatedSum sum;
    double abs_sum = 0.0;
    SeriesDiagnostics diag;

    void add(double term) {
        sum.add(term);
        abs_sum += std::fabs(term);
        diag.max_term_magnitude = std::max(diag.max_term_magnitude, std::fabs(term));
        ++diag.n_terms;
    }
    [[nodiscard]] double roundoff() const {
        return 32.0 * std::numeric_limits<double>::epsilon() * abs_sum;
    }
    [[nodiscard]] EvalResult finish(double tail) {
        const double v = sum.value();
        diag.cancellation_digits =
            v != 0.0 ? std::max(0.0, std::log10(diag.max_term_magnitude / std::fabs(v))) : INFINITY;
        return {v, tail + roundoff(), Method::Series, diag.n_terms, diag};
    }
};

/// ψ(m+1) = −γ + H_m for integer m ≥ 0.
inline double digamma_of_integer_plus_one(std::int64_t m) {
    double h = -0.57721566490153286060651209008240243;
    for (std::int64_t j = 1; j <= m; ++j) h += 1.0 / static_cast<double>(j);
    return h;
}

/// Combined residue where the two pole families collide, s = −n with
/// (x−ρn)/δ = −k: the double pole of Γ(s)·Γ((x+ρs)/δ).
inline double collision_residue(const FourGammaParams& p, std::int64_t n, std::int64_t k) {
    const double ratio = p.rho / p.delta;
    const double bracket = digamma_of_integer_plus_one(n) + ratio * digamma_of_integer_plus_one(k) +
                           std::log(p.b) + ratio * std::log(p.a);
    const double dn = static_cast<double>(n);
    const double dk = static_cast<double>(k);
    const double mag = std::exp(-log_gamma(dn + 1.0) - log_gamma(dk + 1.0) - std::log(p.rho) -
                                dn * std::log(p.b) - dk * std::log(p.a));
    return ((n + k) % 2 == 0 ? 1.0 : -1.0) * mag * bracket;
}

/// Terms of both residue families on the ρ > 0 branch. A collision of the
/// families is absorbed through its exact double-pole residue only when that
/// contribution already lies below the stopping threshold; otherwise the
/// expansion is reported as inapplicable.
class PositiveBranchSeries {
public:
    PositiveBranchSeries(const FourGammaParams& p, double x, const EvalOptions& opts)
        : p_(p), x_(x), opts_(opts) {}

    EvalResult run() {
        int small_run = 0;
        double last_tail = 0.0;
        for (std::int64_t n = 0;; ++n) {
            if (acc_.diag.n_terms + 2 > opts_.max_work) throw BudgetExceeded(acc_.finish(last_tail));
            const double a_mag = primary(n);
            const double c_mag = complementary(n);
            last_tail = a_mag + c_mag;
            small_run = (a_mag <= threshold() && c_mag <= threshold()) ? small_run + 1 : 0;
            if (small_run >= 3) return acc_.finish(last_tail);
        }
    }

private:
    [[nodiscard]] double threshold() const { return opts_.target_rel_error * std::fabs(acc_.sum.value()); }

    bool absorbed(std::int64_t n) const {
        return std::find(acc_.diag.pole_hits.begin(), acc_.diag.pole_hits.end(), n) !=
               acc_.diag.pole_hits.end();
    }

    double absorb_collision(std::int64_t n, std::int64_t k) {
        if (absorbed(n)) return 0.0;
        const double r = collision_residue(p_, n, k);
        acc_.diag.pole_hits.push_back(n);
        if (std::fabs(r) > threshold()) throw SeriesInapplicable(n, "gamma pole before convergence");
        acc_.add(r);
        return std::fabs(r);
    }

    double add_checked(double term, double distance, std::int64_t index) {
        if (distance <= kNearPoleTolerance && std::fabs(term) > threshold())
            throw SeriesInapplicable(index, "term too close to a gamma pole");
        acc_.add(term);
        return std::fabs(term);
    }

    double primary(std::int64_t n) {
        const double arg = primary_argument(p_, x_, n);
        const double d = pole_distance(arg);
        if (d <= kPoleTolerance) return absorb_collision(n, static_cast<std::int64_t>(-std::round(arg)));
        return add_checked(to_value(primary_term_log(p_, x_, n)), d, n);
    }

    double complementary(std::int64_t k) {
        const double s = complementary_argument(p_, x_, k);
        const double d = pole_distance(s);
        const auto n = static_cast<std::int64_t>(-std::round(s));
        if (d <= kPoleTolerance) return absorb_collision(n, k);
        return add_checked(to_value(complementary_term_log(p_, x_, k)), d, n);
    }

    FourGammaParams p_;
    double x_;
    EvalOptions opts_;
    SeriesAccumulator acc_;
};

/// Whether the ρ < 0 series is convergent: the term ratio tends to
/// 0 for |ρ| < δ and to a/b for |ρ| = δ.
inline bool negative_branch_convergent(const FourGammaParams& p) {
    const double r = -p.rho / p.delta;
    if (std::fabs(r - 1.0) <= 1e-12) return p.a < p.b;
    return r < 1.0;
}

inline EvalResult series_negative_branch(const FourGammaParams& p, double x, const EvalOptions& opts) {
    const bool convergent = negative_branch_convergent(p);
    SeriesAccumulator acc;
    std::int64_t smallest_index = 0;
    double smallest = INFINITY;
    double previous = 0.0;
    int small_run = 0;
    int growth_run = 0;

    for (std::int64_t n = 0;; ++n) {
        if (acc.diag.n_terms + 1 > opts.max_work) throw BudgetExceeded(acc.finish(std::fabs(previous)));
        const double term = to_value(primary_term_log(p, x, n));
        if (std::fabs(term) < smallest) {
            smallest = std::fabs(term);
            smallest_index = n;
        }
        if (!convergent && n > 0) {
            growth_run = std::fabs(term) > std::fabs(previous) ? growth_run + 1 : 0;
            if (growth_run >= 5) {
                // Optimal truncation: keep terms before the smallest one.
                SeriesAccumulator trunc;
                for (std::int64_t j = 0; j < smallest_index; ++j) trunc.add(to_value(primary_term_log(p, x, j)));
                trunc.diag.diverging = true;
                trunc.diag.n_terms = std::max<std::int64_t>(trunc.diag.n_terms, 1);
                auto r = trunc.finish(smallest);
                r.work_used = n + 1 + smallest_index;
                return r;
            }
        }
        acc.add(term);
        previous = term;
        small_run = std::fabs(term) <= opts.target_rel_error * std::fabs(acc.sum.value()) ? small_run + 1 : 0;
        if (small_run >= 3) {
            acc.diag.diverging = !convergent;
            return acc.finish(std::fabs(term));
        }
    }
}

}  // namespace detail

/// Evaluates Γ(δ,a;ρ,b)(x) from its gamma-series expansion.
inline EvalResult four_gamma_series(const FourGammaParams& p, double x, const EvalOptions& opts) {
    const Branch branch = validate_params(p, x);
    validate_options(opts);
    return branch == Branch::PositiveRho ? detail::PositiveBranchSeries(p, x, opts).run()
                                         : detail::series_negative_branch(p, x, opts);
}

/// True when the diagnostics show more cancellation than double precision
/// can absorb for a trustworthy result.
inline bool cancellation_exceeded(const SeriesDiagnostics& d) {
    return d.cancellation_digits > kCancellationLimitDigits;
}

}  // namespace fourgamma
