// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fourgamma/fourgamma.hpp"
#include "oracles.hpp"

using namespace fourgamma;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit_seconds;
    std::function<Outcome()> body;
};

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

class Worst {
public:
    explicit Worst(double tol) : tol_(tol) {}
    void observe(double v) { worst_ = std::isnan(v) ? INFINITY : std::max(worst_, std::fabs(v)); }
    [[nodiscard]] Outcome outcome(const std::string& label) const {
        return {worst_ <= tol_, label + " max " + fmt("%.3g", worst_) + " tol " + fmt("%.3g", tol_)};
    }

private:
    double tol_;
    double worst_ = 0.0;
};

struct Sampler {
    std::mt19937_64 gen;
    explicit Sampler(std::uint64_t seed) : gen(seed) {}
    double operator()(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
    FourGammaParams positive() { return {(*this)(0.5, 3), (*this)(0.5, 3), (*this)(0.5, 3), (*this)(0.5, 3)}; }
};

EvalOptions quad_options(double target = 1e-12) {
    EvalOptions o;
    o.target_rel_error = target;
    o.method = Method::Quadrature;
    return o;
}

double quad(const FourGammaParams& p, double x) { return four_gamma(p, x, quad_options()).value; }

// --------------------------------------------------------------------------

Outcome bessel_anchor() {
    Worst w(1e-8);
    for (int nu = 0; nu <= 2; ++nu) {
        const double oracle_value = 2.0 * oracle::bessel_k(nu, 2.0);
        w.observe(rel(four_gamma({1, 1, 1, 1}, nu).value, oracle_value));
    }
    return w.outcome("rel err");
}

Outcome closed_form_collapse() {
    Sampler s(2);
    Worst w(1e-9);
    for (int i = 0; i < 30; ++i) {
        const double delta = s(0.5, 3), a = s(0.5, 3), b = s(0.5, 3), x = s(0.2, 5);
        const FourGammaParams p{delta, a, -delta, b};
        const double formula = std::pow(a * b / (a + b), x / delta) * fourgamma::gamma(x / delta) / delta;
        const double q = four_gamma(p, x, quad_options()).value;
        EvalOptions ho;
        ho.method = Method::Hypergeometric;
        const double h = four_gamma(p, x, ho).value;
        w.observe(std::max({rel(q, formula), rel(h, formula), rel(q, h)}));
    }
    return w.outcome("pairwise rel");
}

Outcome fundamental_equation() {
    Sampler s(3);
    Worst w(1e-8);
    auto evaluator = [](const FourGammaParams& p, double x) { return four_gamma(p, x, quad_options()); };
    for (int i = 0; i < 100; ++i) {
        const auto p = s.positive();
        w.observe(fundamental_residual(p, s(-2, 5), evaluator));
    }
    return w.outcome("normalized residual");
}

Outcome duality() {
    Sampler s(4);
    Worst w(1e-9);
    for (int i = 0; i < 50; ++i) {
        const auto p = s.positive();
        const double x = s(-2, 5);
        w.observe(rel(quad(dual(p), -x), quad(p, x)));
    }
    return w.outcome("rel");
}

bool pole_free(const FourGammaParams& p, double x) {
    for (int n = 0; n <= 200; ++n) {
        const double z = (x - p.rho * n) / p.delta;
        if (z < 0.5 && std::fabs(z - std::round(z)) < 1e-3) return false;
        const double w = -(x + p.delta * n) / p.rho;
        if (w < 0.5 && std::fabs(w - std::round(w)) < 1e-3) return false;
    }
    return true;
}

Outcome series_resummation() {
    Sampler s(5);
    Worst w(1e-8);
    EvalOptions so;
    so.method = Method::Series;
    so.target_rel_error = 1e-12;
    for (int accepted = 0; accepted < 30;) {
        const auto p = s.positive();
        const double x = s(-2, 5);
        if (!pole_free(p, x)) continue;
        ++accepted;
        try {
            w.observe(rel(four_gamma(p, x, so).value, quad(p, x)));
        } catch (const Error&) {
            w.observe(INFINITY);
        }
    }
    Outcome out = w.outcome("rel");
    bool rejected = false;
    try {
        (void)four_gamma({1, 1, 1, 1}, 1.0, so);
    } catch (const SeriesInapplicable&) {
        rejected = true;
    }
    out.pass = out.pass && rejected;
    out.detail += rejected ? ", pole case rejected" : ", pole case NOT rejected";
    return out;
}

bool same(double a, double b) { return std::fabs(a - b) <= 1e-15 * std::max(1.0, std::fabs(b)); }

bool same(const ReductionStep& r, double prefactor, FourGammaParams p, double x) {
    return same(r.prefactor, prefactor) && same(r.new_params.delta, p.delta) && same(r.new_params.a, p.a) &&
           same(r.new_params.rho, p.rho) && same(r.new_params.b, p.b) && same(r.new_x, x);
}

Outcome reductions() {
    Sampler s(6);
    Worst w(1e-9);
    for (int rule = 0; rule < 3; ++rule) {
        for (int i = 0; i < 50; ++i) {
            const auto p = s.positive();
            const double x = s(-2, 5);
            ReductionStep step;
            if (rule == 0) step = reduce_exponent(p, x, s(0.5, 3));
            if (rule == 1) step = reduce_scale(p, x, s(0.5, 3));
            if (rule == 2) step = reduce_full(p, x, s(0.5, 3), s(0.5, 3));
            w.observe(rel(step.prefactor * quad(step.new_params, step.new_x), quad(p, x)));
        }
    }
    Outcome out = w.outcome("rel");
    const FourGammaParams q{1.7, 0.4, 2.2, 3.1};
    const bool algebraic = same(reduce_exponent({2, 1, 2, 1}, 2, 1), 0.5, {1, 1, 1, 1}, 1) &&
                           same(reduce_exponent(q, 0.9, q.delta), 1.0, q, 0.9) &&
                           same(reduce_scale({1, 2, 1, 1}, 1, 1), 2.0, {1, 1, 1, 2}, 1) &&
                           same(reduce_scale(q, 0.9, q.a), 1.0, q, 0.9) &&
                           same(reduce_full({2, 2, 2, 2}, 2, 1, 1), 1.0, {1, 1, 1, 4}, 1) &&
                           same(reduce_full(q, 0.9, q.delta, q.a), 1.0, q, 0.9);
    out.pass = out.pass && algebraic;
    out.detail += algebraic ? ", instantiations exact" : ", instantiations WRONG";
    return out;
}

Outcome pk_limit() {
    Sampler s(7);
    Worst ratio(0.1);
    Worst agree(1e-3);
    for (int i = 0; i < 10; ++i) {
        const PkParams pk{s(0.5, 3), s(0.5, 3)};
        const double x = s(0.5, 5);
        const double exact = pk_gamma_closed(pk, x);
        for (std::int64_t n : {1000, 10000}) {
            const double e1 = pk_gamma_limit(pk, x, n) - exact;
            const double e2 = pk_gamma_limit(pk, x, 2 * n) - exact;
            ratio.observe(e2 / e1 - 0.5);
        }
        agree.observe(rel(pk_gamma_limit(pk, x, 100000), exact));
    }
    const Outcome a = ratio.outcome("|ratio-0.5|");
    const Outcome b = agree.outcome("rel at 1e5");
    return {a.pass && b.pass, a.detail + ", " + b.detail};
}

Outcome euler_product() {
    Worst w(0.1);
    for (double z : {0.5, 1.5, 2.5}) {
        const double exact = fourgamma::gamma(z);
        for (std::int64_t m : {1000, 10000}) {
            const double e1 = gamma_euler_product(z, m) - exact;
            const double e2 = gamma_euler_product(z, 2 * m) - exact;
            w.observe(e2 / e1 - 0.5);
        }
    }
    return w.outcome("|ratio-0.5|");
}

Outcome rho_zero() {
    Sampler s(9);
    Worst w(1e-6);
    const double anchor = quad({1, 1, 1e-8, 1}, 1.0);
    w.observe(rel(anchor, 0.3678794412));
    w.observe(rel(anchor, limit_rho_zero(1, 1, 1, 1)));
    for (int i = 1; i < 10; ++i) {
        const double delta = s(0.5, 3), a = s(0.5, 3), b = s(0.5, 3), x = s(0.2, 5);
        w.observe(rel(quad({delta, a, 1e-8, b}, x), limit_rho_zero(delta, a, b, x)));
    }
    return w.outcome("rel");
}

Outcome asymptotic_branch() {
    Worst w(2.0);
    for (double b : {50.0, 100.0, 500.0}) {
        for (double x : {0.5, 1.0, 2.0}) {
            const FourGammaParams p{1, 1, -2, b};
            EvalOptions ho;
            ho.method = Method::Hypergeometric;
            EvalResult h;
            try {
                h = four_gamma(p, x, ho);
            } catch (const AsymptoticDominated& e) {
                h = e.partial();
            }
            w.observe(std::fabs(h.value - quad(p, x)) / h.abs_error_estimate);
        }
    }
    return w.outcome("|diff|/omitted");
}

// --------------------------------------------------------------------------

struct Run {
    int status = -1;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string(FOURGAMMA_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

Outcome cli_contract() {
    std::vector<std::string> problems;
    const Run v = run_cli("validate --seed 0");
    if (v.status != 0) problems.push_back("validate exit " + std::to_string(v.status));

    const std::string sweep =
        "sweep --delta 1 --a 1 --rho 1 --b 1 --x-start 0 --x-end 2 --steps 3 --methods quadrature,auto";
    const Run s1 = run_cli(sweep);
    const Run s2 = run_cli(sweep);
    if (s1.status != 0) problems.push_back("sweep exit " + std::to_string(s1.status));
    if (s1.out.rfind("x,method,value,abs_error_estimate,work_used\n", 0) != 0) problems.push_back("csv header");
    if (s1.out != s2.out) problems.push_back("sweep csv not deterministic");

    const Run j1 = run_cli(sweep + " --format json");
    const Run j2 = run_cli(sweep + " --format json");
    if (j1.out.empty() || j1.out != j2.out) problems.push_back("sweep json not deterministic");

    const Run r1 = run_cli("validate --grid 3 --seed 5 --json");
    const Run r2 = run_cli("validate --grid 3 --seed 5 --json");
    if (r1.out.empty() || r1.out != r2.out) problems.push_back("validate json not deterministic");

    std::string detail = "validate, sweep header, determinism";
    for (const auto& p : problems) detail += "; " + p;
    return {problems.empty(), detail};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "Bessel anchor", 1.0, bessel_anchor},
        {2, "closed-form collapse", 5.0, closed_form_collapse},
        {3, "fundamental equation", 30.0, fundamental_equation},
        {4, "duality", 15.0, duality},
        {5, "series resummation", 10.0, series_resummation},
        {6, "reductions", 20.0, reductions},
        {7, "pk limit", 10.0, pk_limit},
        {8, "Euler product", 5.0, euler_product},
        {9, "rho to zero continuity", 5.0, rho_zero},
        {10, "asymptotic branch m=2", 5.0, asymptotic_branch},
        {11, "CLI contract", 120.0, cli_contract},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.body();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.time_limit_seconds;
        const bool pass = out.pass && in_time;
        if (!pass) ++failures;
        std::printf("criterion %2d %-24s %s  %s  [%.3fs%s]\n", c.id, c.name, pass ? "PASS" : "FAIL",
                    out.detail.c_str(), secs, in_time ? "" : " over limit");
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
