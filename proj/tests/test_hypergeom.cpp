#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fourgamma/hypergeom.hpp"
#include "fourgamma/identities.hpp"
#include "fourgamma/quadrature.hpp"
#include "oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace fourgamma;

namespace {

EvalOptions tight() {
    EvalOptions o;
    o.target_rel_error = 1e-12;
    return o;
}

}  // namespace

TEST_CASE("pf0_partial_sum") {
    CHECK_THAT(pf0_partial_sum({{}, 1.0}, 30).value, WithinRel(std::exp(1.0), 1e-15));
    CHECK_THAT(pf0_partial_sum({{1.0}, 0.5}, 50).value, WithinAbs(2.0, 1e-12));
    CHECK_THAT(pf0_partial_sum({{2.0}, -0.25}, 60).value, WithinRel(0.64, 1e-12));

    const auto s = pf0_partial_sum({{1.0, 1.0}, -0.01}, 10);
    REQUIRE(s.term_magnitudes.size() == 10);
    CHECK(s.term_magnitudes[0] == 1.0);
    CHECK_THAT(s.term_magnitudes[3], WithinRel(36.0 * 1e-6 / 6.0, 1e-14));

    CHECK_THROWS_AS(pf0_partial_sum({{1.0}, 0.5}, 0), DomainError);
    CHECK_THROWS_AS(pf0_partial_sum({{1.0, 1.0, 1.0}, 1e10}, 200), OverflowError);
}

TEST_CASE("hypergeometric_spec") {
    const auto s = hypergeometric_spec({1, 1, -2, 100}, 1.0);
    REQUIRE(s.m() == 2);
    CHECK(s.upper_params[0] == 0.5);
    CHECK(s.upper_params[1] == 1.0);
    CHECK_THAT(s.argument, WithinRel(-0.04, 1e-15));
    CHECK_THROWS_AS(hypergeometric_spec({1, 1, 1, 1}, 1.0), NotApplicable);
    CHECK_THROWS_AS(hypergeometric_spec({1, 1, -1.5, 1}, 1.0), NotApplicable);
}

TEST_CASE("four_gamma_hypergeometric m=1") {
    CHECK_THAT(four_gamma_hypergeometric({1, 1, -1, 2}, 2.0, {}).value, WithinRel(4.0 / 9.0, 1e-14));
    CHECK_THAT(four_gamma_hypergeometric({1, 1, -1, 2}, 1.0, {}).value, WithinRel(2.0 / 3.0, 1e-14));
    CHECK(four_gamma_hypergeometric({1, 1, -1, 2}, 1.0, {}).method_used == Method::Hypergeometric);
    CHECK_THROWS_AS(four_gamma_hypergeometric({1, 1, -1, 2}, -1.0, {}), DomainError);
}

TEST_CASE("m=1 exactness on random tuples") {
    std::mt19937_64 gen(47);
    std::uniform_real_distribution<double> d(0.5, 3.0), ratio(0.05, 5.0), xd(0.2, 5.0);
    for (int i = 0; i < 30; ++i) {
        const double delta = d(gen), b = d(gen);
        const double a = b * ratio(gen);
        const double x = xd(gen);
        const FourGammaParams p{delta, a, -delta, b};
        const double h = four_gamma_hypergeometric(p, x, {}).value;
        const double formula = std::pow(a * b / (a + b), x / delta) * fourgamma::gamma(x / delta) / delta;
        CHECK_THAT(h, WithinRel(formula, 1e-10));
        CHECK_THAT(h, WithinRel(closed_form(p, x)->value, 1e-10));
        CHECK_THAT(h, WithinRel(four_gamma_quadrature(p, x, tight()).value, 1e-10));
    }
}

TEST_CASE("four_gamma_hypergeometric m=2 asymptotic") {
    const auto r = four_gamma_hypergeometric({1, 1, -2, 100}, 1.0, {});
    REQUIRE(r.diagnostics.has_value());
    CHECK(r.diagnostics->diverging);
    CHECK(std::fabs(r.value - oracle::kF_1_1_m2_100_at_1) <= r.abs_error_estimate);
}

TEST_CASE("m>=2 asymptotic contract in the large-b regime") {
    for (double b : {50.0, 100.0, 500.0, 2000.0}) {
        for (double x : {0.5, 1.0, 2.0}) {
            for (double m : {2.0, 3.0}) {
                const FourGammaParams p{1, 1, -m, b};
                EvalResult r;
                try {
                    r = four_gamma_hypergeometric(p, x, {});
                } catch (const AsymptoticDominated& e) {
                    r = e.partial();
                }
                if (r.abs_error_estimate >= 1e-6 * r.value) continue;
                const double q = four_gamma_quadrature(p, x, tight()).value;
                CHECK(std::fabs(r.value - q) <= 2.0 * r.abs_error_estimate);
            }
        }
    }
}

TEST_CASE("AsymptoticDominated carries the optimally truncated sum") {
    try {
        (void)four_gamma_hypergeometric({1, 1, -2, 2}, 1.0, {});
        FAIL("expected AsymptoticDominated");
    } catch (const AsymptoticDominated& e) {
        const double q = four_gamma_quadrature({1, 1, -2, 2}, 1.0, tight()).value;
        CHECK(e.partial().abs_error_estimate > 1e-10 * q);
        CHECK(std::fabs(e.partial().value - q) <= 2.0 * e.partial().abs_error_estimate);
    }
}

TEST_CASE("pochhammer_split_check") {
    const auto [l, r] = pochhammer_split_check(1.0, 2, 1);
    CHECK(l == 2.0);
    CHECK(r == 2.0);
    const auto [l3, r3] = pochhammer_split_check(0.3, 3, 2);
    CHECK_THAT(r3, WithinRel(l3, 1e-12));
    for (double a : {0.25, 1.5, 7.0}) {
        const auto [l1, r1] = pochhammer_split_check(a, 1, 6);
        CHECK(l1 == pochhammer(a, 6));
        CHECK(r1 == pochhammer(a, 6));
    }
}

TEST_CASE("split check over the grid") {
    for (std::int64_t m = 1; m <= 5; ++m)
        for (std::int64_t n = 0; n <= 20; ++n)
            for (double a = 0.1; a <= 10.0; a += 0.3) {
                const auto [l, r] = pochhammer_split_check(a, m, n);
                CHECK_THAT(r, WithinRel(l, 1e-12));
            }
}
