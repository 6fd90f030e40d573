#pragma once

// Classical gamma primitives, Pochhammer symbols, and the two-parameter
// (p-k) gamma function in closed, limit and Euler-product forms.

#include <cmath>
#include <cstdint>

#include "fourgamma/core.hpp"

namespace fourgamma {

struct PkParams {
    double p = 1.0;
    double k = 1.0;
};

/// log|Γ(z)| together with the sign of Γ(z).
struct SignedLog {
    double log_abs = 0.0;
    int sign = 1;
};

namespace detail {

// Lanczos approximation, g = 7, nine coefficients.
inline constexpr double kLanczosG = 7.0;
inline constexpr double kLanczosCoef[9] = {
    0.99999999999980993,     676.5203681218851,      -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7,
};

inline constexpr double kGammaOverflowArg = 171.61447887182298;
inline constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

inline double lanczos_series(double zm1) {
    double s = kLanczosCoef[0];
    for (int i = 1; i < 9; ++i) s += kLanczosCoef[i] / (zm1 + i);
    return s;
}

inline bool is_nonpositive_integer(double z) { return z <= 0.0 && z == std::floor(z); }

/// sin(πz) with exact argument reduction.
inline double sinpi(double z) {
    double r = std::fmod(z, 2.0);  // exact
    if (r > 1.0) r -= 2.0;
    if (r < -1.0) r += 2.0;
    if (r > 0.5) r = 1.0 - r;
    if (r < -0.5) r = -1.0 - r;
    return std::sin(kPi * r);
}

// ln Γ(z) for z >= 0.5 via Lanczos.
inline double log_gamma_lanczos(double z) {
    const double zm1 = z - 1.0;
    const double t = zm1 + kLanczosG + 0.5;
    return kHalfLog2Pi + (zm1 + 0.5) * std::log(t) - t + std::log(lanczos_series(zm1));
}

}  // namespace detail

/// ln Γ(z) for z > 0.
inline double log_gamma(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("z", "log_gamma needs z > 0");
    if (z == 1.0 || z == 2.0) return 0.0;
    if (z < 0.5) return detail::log_gamma_lanczos(z + 1.0) - std::log(z);
    return detail::log_gamma_lanczos(z);
}

/// Classical Γ(z) for real z; reflection handles negative non-integers.
inline double gamma(double z) {
    if (!std::isfinite(z)) throw DomainError("z", "not finite");
    if (detail::is_nonpositive_integer(z)) throw PoleError(z);
    if (z > detail::kGammaOverflowArg) throw OverflowError("gamma(" + std::to_string(z) + ")");

    if (z == std::floor(z) && z <= 171.0) {
        double f = 1.0;
        for (double j = 2.0; j < z; j += 1.0) f *= j;
        return f;
    }
    if (z < 0.5) {
        const double s = detail::sinpi(z);
        const double w = 1.0 - z;
        if (w <= detail::kGammaOverflowArg) return detail::kPi / (s * gamma(w));
        // Γ(1−z) overflows; the result underflows toward zero.
        const double lg = std::log(detail::kPi) - std::log(std::fabs(s)) - log_gamma(w);
        return std::copysign(std::exp(lg), s);
    }
    const double zm1 = z - 1.0;
    const double t = zm1 + detail::kLanczosG + 0.5;
    const double half = std::pow(t, 0.5 * (zm1 + 0.5));
    return std::sqrt(2.0 * detail::kPi) * half * (half * std::exp(-t)) * detail::lanczos_series(zm1);
}

/// log|Γ(z)| with sign, valid for any real z off the poles.
inline SignedLog log_abs_gamma(double z) {
    if (!std::isfinite(z)) throw DomainError("z", "not finite");
    if (detail::is_nonpositive_integer(z)) throw PoleError(z);
    if (z > 0.0) return {log_gamma(z), 1};
    const double s = detail::sinpi(z);
    return {std::log(detail::kPi) - std::log(std::fabs(s)) - log_gamma(1.0 - z), s > 0.0 ? 1 : -1};
}

inline void validate_pk(const PkParams& pk) {
    if (!(pk.p > 0.0) || !std::isfinite(pk.p)) throw DomainError("p", "must be > 0");
    if (!(pk.k > 0.0) || !std::isfinite(pk.k)) throw DomainError("k", "must be > 0");
}

/// ∫₀^∞ exp(−t^k/p) t^{x−1} dt = (p^{x/k}/k) Γ(x/k).
inline double pk_gamma_closed(const PkParams& pk, double x) {
    validate_pk(pk);
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("x", "must be > 0");
    const double s = x / pk.k;
    double v;
    if (s < 150.0) {
        v = std::pow(pk.p, s) / pk.k * gamma(s);
    } else {
        v = std::exp(s * std::log(pk.p) + log_gamma(s) - std::log(pk.k));
    }
    if (!std::isfinite(v)) throw OverflowError("pk_gamma_closed");
    return v;
}

/// Rising factorial (α)ₙ = α(α+1)…(α+n−1).
inline double pochhammer(double alpha, std::int64_t n) {
    double v = 1.0;
    for (std::int64_t j = 0; j < n; ++j) v *= alpha + static_cast<double>(j);
    return v;
}

/// Two-parameter Pochhammer symbol ∏_{j<n} p(x+jk)/k.
inline double pochhammer_two_param(const PkParams& pk, double x, std::int64_t n) {
    double v = 1.0;
    for (std::int64_t j = 0; j < n; ++j)
        v *= pk.p * (x + static_cast<double>(j) * pk.k) / pk.k;
    return v;
}

/// n-th approximant (1/k)·n!·p^{n+1}(np)^{x/k} / ₚ(x)_{n+1,k} of the p-k gamma
/// function. Converges to pk_gamma_closed with O(1/n) error.
inline double pk_gamma_limit(const PkParams& pk, double x, std::int64_t n) {
    validate_pk(pk);
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("x", "must be > 0");
    if (n < 1) throw DomainError("n", "must be >= 1");
    const double s = x / pk.k;
    const double dn = static_cast<double>(n);
    // n!·p^{n+1} / ₚ(x)_{n+1,k} = (1/s)·∏_{j=1}^{n} j/(s+j); p^{n+1} cancels.
    detail::CompensatedSum log_sum;
    log_sum.add(-std::log(pk.k));
    log_sum.add(s * std::log(dn * pk.p));
    log_sum.add(-std::log(s));
    for (std::int64_t j = 1; j <= n; ++j) log_sum.add(-std::log1p(s / static_cast<double>(j)));
    const double v = std::exp(log_sum.value());
    if (!std::isfinite(v)) throw OverflowError("pk_gamma_limit");
    return v;
}

/// Truncated Euler product (1/z)·∏_{m=1}^{M} (1+1/m)^z / (1+z/m) → Γ(z).
inline double gamma_euler_product(double z, std::int64_t terms) {
    if (!std::isfinite(z)) throw DomainError("z", "not finite");
    if (detail::is_nonpositive_integer(z)) throw PoleError(z);
    if (terms < 1) throw DomainError("M", "must be >= 1");
    int sign = z > 0.0 ? 1 : -1;
    detail::CompensatedSum log_sum;
    log_sum.add(-std::log(std::fabs(z)));
    for (std::int64_t m = 1; m <= terms; ++m) {
        const double dm = static_cast<double>(m);
        const double f = 1.0 + z / dm;
        if (f < 0.0) sign = -sign;
        log_sum.add(z * std::log1p(1.0 / dm) - std::log(std::fabs(f)));
    }
    const double v = std::exp(log_sum.value());
    if (!std::isfinite(v)) throw OverflowError("gamma_euler_product");
    return sign * v;
}

/// (α)_{r·n} through the Gauss multiplication split r^{rn}·∏_{j<r}((α+j)/r)ₙ.
inline double gauss_multiplication(double alpha, std::int64_t r, std::int64_t n) {
    if (r < 1) throw DomainError("r", "must be >= 1");
    const double dr = static_cast<double>(r);
    double v = std::pow(dr, static_cast<double>(r * n));
    for (std::int64_t j = 0; j < r; ++j) v *= pochhammer((alpha + static_cast<double>(j)) / dr, n);
    return v;
}

}  // namespace fourgamma
