#pragma once

// Randomized identity-validation suite behind `fourgamma validate`.
//
// Every record compares two independent routes to the same number and keeps
// the worst normalized discrepancy. Agreement tolerances are expressed for
// the default --tol of 1e-8 and scale linearly with it; the convergence-rate
// bands and the asymptotic-truncation ratio are fixed contracts.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "fourgamma/four_gamma.hpp"
#include "fourgamma/gamma_basics.hpp"
#include "fourgamma/hypergeom.hpp"
#include "fourgamma/identities.hpp"
#include "fourgamma/quadrature.hpp"
#include "fourgamma/series.hpp"

namespace fourgamma {

struct ValidationRecord {
    std::string identity;
    std::int64_t grid_size = 0;
    double max_normalized_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ValidationReport {
    std::vector<ValidationRecord> records;
    bool overall_pass = false;
};

struct ValidationConfig {
    std::int64_t grid = 50;
    std::uint64_t seed = 0;
    double tol = 1e-8;
};

/// Platform-independent uniform sampling on top of mt19937_64.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    FourGammaParams positive_params(double lo = 0.5, double hi = 3.0) {
        FourGammaParams p;
        p.delta = uniform(lo, hi);
        p.a = uniform(lo, hi);
        p.rho = uniform(lo, hi);
        p.b = uniform(lo, hi);
        return p;
    }

private:
    std::mt19937_64 gen_;
};

namespace detail {

inline constexpr double kDefaultTol = 1e-8;

inline double rel_diff(double a, double b) { return std::fabs(a - b) / std::fabs(a); }

class RecordBuilder {
public:
    RecordBuilder(std::string id, double tolerance) : id_(std::move(id)), tol_(tolerance) {}

    void observe(double residual) {
        ++count_;
        if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
        worst_ = std::max(worst_, std::fabs(residual));
    }
    void fail() { worst_ = std::numeric_limits<double>::infinity(); }

    [[nodiscard]] ValidationRecord build() const {
        return {id_, count_, worst_, tol_, worst_ <= tol_};
    }

private:
    std::string id_;
    double tol_;
    std::int64_t count_ = 0;
    double worst_ = 0.0;
};

inline std::uint64_t row_seed(std::uint64_t seed, std::uint64_t row) {
    return seed * 0x9E3779B97F4A7C15ULL + row * 0xBF58476D1CE4E5B9ULL + 1;
}

inline EvalOptions reference_options() {
    EvalOptions o;
    o.target_rel_error = 1e-12;
    o.method = Method::Quadrature;
    return o;
}

inline double quad(const FourGammaParams& p, double x) {
    return four_gamma_quadrature(p, x, reference_options()).value;
}

template <typename Body>
void guarded(RecordBuilder& rec, Body&& body) {
    try {
        body();
    } catch (const Error&) {
        rec.fail();
    }
}

inline bool same(double a, double b) { return std::fabs(a - b) <= 1e-15 * std::max(1.0, std::fabs(a)); }

inline bool same(const ReductionStep& s, double prefactor, const FourGammaParams& p, double x) {
    return same(s.prefactor, prefactor) && same(s.new_params.delta, p.delta) && same(s.new_params.a, p.a) &&
           same(s.new_params.rho, p.rho) && same(s.new_params.b, p.b) && same(s.new_x, x);
}

}  // namespace detail

inline ValidationRecord validate_duality(const ValidationConfig& cfg) {
    detail::RecordBuilder rec("duality", 1e-9 * cfg.tol / detail::kDefaultTol);
    Sampler rng(detail::row_seed(cfg.seed, 1));
    for (std::int64_t i = 0; i < cfg.grid; ++i) {
        const FourGammaParams p = rng.positive_params();
        const double x = rng.uniform(-2.0, 5.0);
        detail::guarded(rec, [&] { rec.observe(detail::rel_diff(detail::quad(p, x), detail::quad(dual(p), -x))); });
    }
    return rec.build();
}

inline ValidationRecord validate_exponent_rescale(const ValidationConfig& cfg) {
    detail::RecordBuilder rec("exponent-rescale", 1e-9 * cfg.tol / detail::kDefaultTol);
    detail::guarded(rec, [&] {
        if (!detail::same(reduce_exponent({2, 1, 2, 1}, 2, 1), 0.5, {1, 1, 1, 1}, 1)) rec.fail();
        if (!detail::same(reduce_exponent({1.5, 2, 0.7, 3}, 0.4, 1.5), 1.0, {1.5, 2, 0.7, 3}, 0.4)) rec.fail();
    });
    Sampler rng(detail::row_seed(cfg.seed, 2));
    for (std::int64_t i = 0; i < cfg.grid; ++i) {
        const FourGammaParams p = rng.positive_params();
        const double x = rng.uniform(-2.0, 5.0);
        const double k = rng.uniform(0.5, 3.0);
        detail::guarded(rec, [&] {
            const ReductionStep s = reduce_exponent(p, x, k);
            rec.observe(detail::rel_diff(detail::quad(p, x), s.prefactor * detail::quad(s.new_params, s.new_x)));
        });
    }
    return rec.build();
}

inline ValidationRecord validate_scale_only(const ValidationConfig& cfg) {
    detail::RecordBuilder rec("scale-only", 1e-9 * cfg.tol / detail::kDefaultTol);
    detail::guarded(rec, [&] {
        if (!detail::same(reduce_scale({1, 2, 1, 1}, 1, 1), 2.0, {1, 1, 1, 2}, 1)) rec.fail();
        if (!detail::same(reduce_scale({1.5, 2, 0.7, 3}, 0.4, 2), 1.0, {1.5, 2, 0.7, 3}, 0.4)) rec.fail();
    });
    Sampler rng(detail::row_seed(cfg.seed, 3));
    for (std::int64_t i = 0; i < cfg.grid; ++i) {
        const FourGammaParams p = rng.positive_params();
        const double x = rng.uniform(-2.0, 5.0);
        const double new_a = rng.uniform(0.5, 3.0);
        detail::guarded(rec, [&] {
            const ReductionStep s = reduce_scale(p, x, new_a);
            rec.observe(detail::rel_diff(detail::quad(p, x), s.prefactor * detail::quad(s.new_params, s.new_x)));
        });
    }
    return rec.build();
}

inline ValidationRecord validate_full_rescale(const ValidationConfig& cfg) {
    detail::RecordBuilder rec("full-rescale", 1e-9 * cfg.tol / detail::kDefaultTol);
    detail::guarded(rec, [&] {
        if (!detail::same(reduce_full({2, 2, 2, 2}, 2, 1, 1), 1.0, {1, 1, 1, 4}, 1)) rec.fail();
    });
    Sampler rng(detail::row_seed(cfg.seed, 4));
    for (std::int64_t i = 0; i < cfg.grid; ++i) {
        const FourGammaParams p = rng.positive_params();
        const double x = rng.uniform(-2.0, 5.0);
        const double k = rng.uniform(0.5, 3.0);
        const double new_a = rng.uniform(0.5, 3.0);
        detail::guarded(rec, [&] {
            const ReductionStep one = reduce_full(p, x, k, new_a);
            const ReductionStep e = reduce_exponent(p, x, k);
            const ReductionStep two = reduce_scale(e.new_params, e.new_x, new_a);
            if (one.prefactor != e.prefactor * two.prefactor || !(one.new_params == two.new_params) ||
                one.new_x != two.new_x)
                rec.fail();
            rec.observe(detail::rel_diff(detail::quad(p, x), one.prefactor * detail::quad(one.new_params, one.new_x)));
        });
    }
    return rec.build();
}

inline ValidationRecord validate_functional_equation(const ValidationConfig& cfg) {
    detail::RecordBuilder rec("functional-equation", 1e-8 * cfg.tol / detail::kDefaultTol);
    Sampler rng(detail::row_seed(cfg.seed, 5));
    auto evaluator = [](const FourGammaParams& p, double x) {
        return four_gamma_quadrature(p, x, detail::reference_options());
    };
    for (std::int64_t i = 0; i < cfg.grid; ++i) {
        const FourGammaParams p = rng.positive_params();
        const double x = rng.uniform(-2.0, 5.0);
        detail::guarded(rec, [&] { rec.observe(fundamental_residual(p, x, evaluator)); });
    }
    return rec.build();
}

inline ValidationRecord validate_series(const ValidationConfig& cfg) {
    detail::RecordBuilder rec("series-vs-quadrature", 1e-8 * cfg.tol / detail::kDefaultTol);
    detail::guarded(rec, [&] {
        try {
            (void)four_gamma_series({1, 1, 1, 1}, 1.0, {});
            rec.fail();  // the pole case must be rejected
        } catch (const SeriesInapplicable&) {
        }
    });
    Sampler rng(detail::row_seed(cfg.seed, 6));
    EvalOptions so;
    so.target_rel_error = 1e-12;
    std::int64_t accepted = 0;
    for (std::int64_t attempt = 0; accepted < cfg.grid && attempt < 20 * cfg.grid + 20; ++attempt) {
        const FourGammaParams p = rng.positive_params();
        const double x = rng.uniform(-2.0, 5.0);
        try {
            const EvalResult s = four_gamma_series(p, x, so);
            ++accepted;
            detail::guarded(rec, [&] { rec.observe(detail::rel_diff(detail::quad(p, x), s.value)); });
        } catch (const SeriesInapplicable&) {
            // not a pole-free tuple; draw another
        } catch (const Error&) {
            ++accepted;
            rec.fail();
        }
    }
    if (accepted < cfg.grid) rec.fail();
    return rec.build();
}

inline ValidationRecord validate_collapse(const ValidationConfig& cfg) {
    detail::RecordBuilder rec("closed-form-collapse", 1e-9 * cfg.tol / detail::kDefaultTol);
    Sampler rng(detail::row_seed(cfg.seed, 7));
    for (std::int64_t i = 0; i < cfg.grid; ++i) {
        const double delta = rng.uniform(0.5, 3.0);
        const double a = rng.uniform(0.5, 3.0);
        const double b = rng.uniform(std::max(0.5, a / 5.0), 3.0);
        const double x = rng.uniform(0.2, 5.0);
        const FourGammaParams p{delta, a, -delta, b};
        detail::guarded(rec, [&] {
            const double q = detail::quad(p, x);
            const double h = four_gamma_hypergeometric(p, x, {}).value;
            const double c = closed_form(p, x).value().value;
            rec.observe(std::max({detail::rel_diff(q, h), detail::rel_diff(q, c), detail::rel_diff(h, c)}));
        });
    }
    return rec.build();
}

inline ValidationRecord validate_asymptotic(const ValidationConfig&) {
    // |truncated − quadrature| / first omitted term.
    detail::RecordBuilder rec("asymptotic-m2", 2.0);
    for (double b : {50.0, 100.0, 500.0}) {
        for (double x : {0.5, 1.0, 2.0}) {
            const FourGammaParams p{1, 1, -2, b};
            detail::guarded(rec, [&] {
                EvalResult h;
                try {
                    h = four_gamma_hypergeometric(p, x, {});
                } catch (const AsymptoticDominated& e) {
                    h = e.partial();
                }
                rec.observe(std::fabs(h.value - detail::quad(p, x)) / h.abs_error_estimate);
            });
        }
    }
    return rec.build();
}

/// Error ratio e(2n)/e(n) of the p-k gamma limit; |ratio − 0.5| ≤ 0.1.
inline std::vector<ValidationRecord> validate_pk_limit(const ValidationConfig& cfg) {
    detail::RecordBuilder rate("pk-limit-rate", 0.1);
    detail::RecordBuilder agree("pk-limit-agreement", 1e-3 * cfg.tol / detail::kDefaultTol);
    Sampler rng(detail::row_seed(cfg.seed, 8));
    const std::int64_t count = std::min<std::int64_t>(cfg.grid, 10);
    for (std::int64_t i = 0; i < count; ++i) {
        const PkParams pk{rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0)};
        const double x = rng.uniform(0.5, 5.0);
        detail::guarded(rate, [&] {
            const double exact = pk_gamma_closed(pk, x);
            for (std::int64_t n : {1000, 10000}) {
                const double e1 = pk_gamma_limit(pk, x, n) - exact;
                const double e2 = pk_gamma_limit(pk, x, 2 * n) - exact;
                rate.observe(e2 / e1 - 0.5);
            }
            agree.observe(detail::rel_diff(exact, pk_gamma_limit(pk, x, 100000)));
        });
    }
    return {rate.build(), agree.build()};
}

inline ValidationRecord validate_euler_product(const ValidationConfig&) {
    detail::RecordBuilder rec("euler-product-rate", 0.1);
    for (double z : {0.5, 1.5, 2.5}) {
        detail::guarded(rec, [&] {
            const double exact = gamma(z);
            for (std::int64_t m : {1000, 10000}) {
                const double e1 = gamma_euler_product(z, m) - exact;
                const double e2 = gamma_euler_product(z, 2 * m) - exact;
                rec.observe(e2 / e1 - 0.5);
            }
        });
    }
    return rec.build();
}

inline ValidationRecord validate_rho_zero(const ValidationConfig& cfg) {
    detail::RecordBuilder rec("rho-zero-continuity", 1e-6 * cfg.tol / detail::kDefaultTol);
    Sampler rng(detail::row_seed(cfg.seed, 9));
    const std::int64_t count = std::min<std::int64_t>(cfg.grid, 10);
    for (std::int64_t i = 0; i < count; ++i) {
        double delta = 1, a = 1, b = 1, x = 1;  // anchor e^{-1}
        if (i > 0) {
            delta = rng.uniform(0.5, 3.0);
            a = rng.uniform(0.5, 3.0);
            b = rng.uniform(0.5, 3.0);
            x = rng.uniform(0.2, 5.0);
        }
        detail::guarded(rec, [&] {
            rec.observe(detail::rel_diff(limit_rho_zero(delta, a, b, x), detail::quad({delta, a, 1e-8, b}, x)));
        });
    }
    return rec.build();
}

inline ValidationReport run_validation(const ValidationConfig& cfg) {
    if (cfg.grid < 1) throw DomainError("grid", "must be >= 1");
    if (!(cfg.tol > 0.0)) throw DomainError("tol", "must be > 0");
    ValidationReport report;
    auto& r = report.records;
    r.push_back(validate_duality(cfg));
    r.push_back(validate_exponent_rescale(cfg));
    r.push_back(validate_full_rescale(cfg));
    r.push_back(validate_scale_only(cfg));
    r.push_back(validate_functional_equation(cfg));
    r.push_back(validate_series(cfg));
    r.push_back(validate_collapse(cfg));
    r.push_back(validate_asymptotic(cfg));
    for (auto& rec : validate_pk_limit(cfg)) r.push_back(std::move(rec));
    r.push_back(validate_euler_product(cfg));
    r.push_back(validate_rho_zero(cfg));
    report.overall_pass = std::all_of(r.begin(), r.end(), [](const auto& rec) { return rec.pass; });
    return report;
}

}  // namespace fourgamma
