#pragma once

// Method-dispatching entry point.

#include <cmath>

#include "fourgamma/core.hpp"
#include "fourgamma/hypergeom.hpp"
#include "fourgamma/identities.hpp"
#include "fourgamma/quadrature.hpp"
#include "fourgamma/series.hpp"

namespace fourgamma {

inline constexpr std::int64_t kApplicabilityHorizon = 64;

/// Evaluates Γ(δ,a;ρ,b)(x). With Method::Auto the cheapest applicable
/// method wins: closed form, then series, then quadrature.
inline EvalResult four_gamma(const FourGammaParams& p, double x, const EvalOptions& opts = {}) {
    validate_params(p, x);
    validate_options(opts);

    switch (opts.method) {
        case Method::Quadrature: return four_gamma_quadrature(p, x, opts);
        case Method::Series: return four_gamma_series(p, x, opts);
        case Method::Hypergeometric: return four_gamma_hypergeometric(p, x, opts);
        case Method::ClosedForm: {
            if (auto r = closed_form(p, x)) return *r;
            throw NotApplicable("no closed form for these parameters");
        }
        case Method::Auto: break;
    }

    if (auto r = closed_form(p, x)) return *r;

    if (series_applicable(p, x, kApplicabilityHorizon).applicable) {
        try {
            EvalResult r = four_gamma_series(p, x, opts);
            const bool accurate = r.abs_error_estimate <= opts.target_rel_error * std::fabs(r.value);
            if (accurate && r.value > 0.0 && !cancellation_exceeded(*r.diagnostics)) return r;
        } catch (const SeriesInapplicable&) {
        } catch (const BudgetExceeded&) {
        } catch (const OverflowError&) {
        }
    }
    return four_gamma_quadrature(p, x, opts);
}

}  // namespace fourgamma
