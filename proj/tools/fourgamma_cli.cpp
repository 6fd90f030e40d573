// fourgamma: command-line front end.
//
//   fourgamma eval     --delta D --a A --rho R --b B --x X [--method M] [--rel-err E] [--json]
//   fourgamma validate [--grid N] [--seed S] [--tol T] [--json]
//   fourgamma sweep    --delta D --a A --rho R --b B --x-start X0 --x-end X1 --steps N
//                      [--methods m1,m2] [--out PATH] [--format csv|json]
//   fourgamma bench    [--suite series-vs-quad] [--repeats N]
//
// Exit codes: 0 success, 1 numerical failure, 2 usage or domain error.
// FOURGAMMA_MAX_WORK overrides the default work budget.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fourgamma/fourgamma.hpp"
#include "fourgamma/report.hpp"
#include "fourgamma/validation.hpp"

namespace {

using namespace fourgamma;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::int64_t default_max_work() {
    const char* env = std::getenv("FOURGAMMA_MAX_WORK");
    if (env == nullptr || *env == '\0') return EvalOptions{}.max_work;
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (*end != '\0' || v < 16) throw UsageError("FOURGAMMA_MAX_WORK must be an integer >= 16");
    return v;
}

Method method_from(const std::string& name) {
    if (auto m = parse_method(name)) return *m;
    throw UsageError("unknown method: " + name);
}

std::vector<Method> methods_from(const std::string& list) {
    std::vector<Method> out;
    std::stringstream ss(list);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(method_from(item));
    if (out.empty()) throw UsageError("--methods is empty");
    return out;
}

// --------------------------------------------------------------------------

struct EvalArgs {
    FourGammaParams params;
    double x = 0.0;
    std::string method = "auto";
    double rel_err = 1e-10;
    bool json = false;
};

int run_eval(const EvalArgs& args) {
    EvalOptions opts;
    opts.target_rel_error = args.rel_err;
    opts.max_work = default_max_work();
    opts.method = method_from(args.method);
    const EvalResult r = four_gamma(args.params, args.x, opts);
    if (args.json) {
        std::cout << to_json(r).dump() << '\n';
    } else {
        std::cout << "value=" << format_double(r.value) << " abs_error_estimate=" << format_double(r.abs_error_estimate)
                  << " method=" << to_string(r.method_used) << " work_used=" << r.work_used << '\n';
    }
    return kExitOk;
}

// --------------------------------------------------------------------------

struct ValidateArgs {
    ValidationConfig cfg;
    bool json = false;
};

int run_validate(const ValidateArgs& args) {
    const ValidationReport report = run_validation(args.cfg);
    if (args.json) {
        std::cout << to_json(report).dump() << '\n';
    } else {
        for (const auto& r : report.records) {
            std::printf("%-22s grid=%-4lld max_residual=%-12.4g tol=%-8.3g %s\n", r.identity.c_str(),
                        static_cast<long long>(r.grid_size), r.max_normalized_residual, r.tolerance,
                        r.pass ? "PASS" : "FAIL");
        }
        std::printf("overall: %s\n", report.overall_pass ? "PASS" : "FAIL");
    }
    return report.overall_pass ? kExitOk : kExitNumerical;
}

// --------------------------------------------------------------------------

struct SweepArgs {
    FourGammaParams params;
    double x_start = 0.0;
    double x_end = 1.0;
    std::int64_t steps = 2;
    std::string methods = "auto";
    std::string out = "-";
    std::string format = "csv";
    double rel_err = 1e-10;
};

int run_sweep_cmd(const SweepArgs& args) {
    SweepSpec spec{args.params, args.x_start, args.x_end, args.steps, methods_from(args.methods)};
    EvalOptions opts;
    opts.target_rel_error = args.rel_err;
    opts.max_work = default_max_work();
    validate_options(opts);
    validate_sweep(spec);

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (args.out != "-") {
        file.open(args.out);
        if (!file) throw UsageError("cannot write " + args.out);
        os = &file;
    }
    const auto rows = run_sweep(spec, opts);
    if (args.format == "csv")
        write_csv(*os, rows);
    else
        *os << to_json(rows).dump() << '\n';
    os->flush();
    if (!*os) throw UsageError("write failed: " + args.out);
    const bool all_ok = std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.result.has_value(); });
    return all_ok ? kExitOk : kExitNumerical;
}

// --------------------------------------------------------------------------

struct BenchArgs {
    std::string suite = "series-vs-quad";
    int repeats = 5;
};

struct BenchPoint {
    FourGammaParams p;
    double x;
};

// Pole-free on the series side: (x − ρn)/δ stays away from the integers.
const std::vector<BenchPoint>& bench_grid() {
    static const std::vector<BenchPoint> grid = {
        {{1.0, 1.0, 0.6, 1.0}, 0.5},     {{1.3, 0.7, 0.9, 2.1}, 1.17},   {{2.0, 3.0, 1.3, 4.0}, 1.7},
        {{0.7, 2.2, 1.9, 0.8}, -0.3},    {{1.7, 1.2, 2.3, 1.4}, 2.45},  {{2.5, 0.9, 0.55, 2.7}, 3.37},
        {{0.9, 1.6, 1.45, 0.95}, -1.15}, {{1.1, 2.8, 0.75, 1.9}, 4.05},
    };
    return grid;
}

int run_bench(const BenchArgs& args) {
    if (args.suite != "series-vs-quad") throw UsageError("unknown suite: " + args.suite);
    if (args.repeats < 1) throw UsageError("--repeats must be >= 1");
    const auto& grid = bench_grid();

    EvalOptions ref_opts;
    ref_opts.target_rel_error = 1e-13;
    std::vector<double> reference;
    for (const auto& pt : grid) {
        try {
            reference.push_back(four_gamma_quadrature(pt.p, pt.x, ref_opts).value);
        } catch (const BudgetExceeded& e) {
            reference.push_back(e.partial().value);
        }
    }

    EvalOptions opts;
    opts.max_work = default_max_work();
    bool ok = true;
    std::cout << "suite,method,points,repeats,median_wall_seconds,max_rel_error\n";
    for (Method m : {Method::Series, Method::Quadrature}) {
        opts.method = m;
        std::vector<double> times;
        double worst = 0.0;
        for (int rep = 0; rep < args.repeats; ++rep) {
            const auto start = std::chrono::steady_clock::now();
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double v = four_gamma(grid[i].p, grid[i].x, opts).value;
                worst = std::max(worst, std::fabs(v - reference[i]) / std::fabs(reference[i]));
            }
            times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        }
        std::sort(times.begin(), times.end());
        const double median = times[times.size() / 2];
        ok = ok && worst <= 1e-8;
        std::cout << args.suite << ',' << to_string(m) << ',' << grid.size() << ',' << args.repeats << ','
                  << format_double(median) << ',' << format_double(worst) << '\n';
    }
    return ok ? kExitOk : kExitNumerical;
}

void add_params(CLI::App* cmd, FourGammaParams& p) {
    cmd->add_option("--delta", p.delta, "exponent of t^delta")->required();
    cmd->add_option("--a", p.a, "scale of t^delta")->required();
    cmd->add_option("--rho", p.rho, "signed exponent of the second term")->required();
    cmd->add_option("--b", p.b, "scale of the second term")->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Four-parameter gamma function evaluator"};
    app.require_subcommand(1);

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "evaluate at one point");
    add_params(eval, eval_args.params);
    eval->add_option("--x", eval_args.x, "argument")->required();
    eval->add_option("--method", eval_args.method, "auto|quadrature|series|hypergeometric|closed_form");
    eval->add_option("--rel-err", eval_args.rel_err, "target relative error");
    eval->add_flag("--json", eval_args.json, "print the EvalResult as JSON");

    ValidateArgs val_args;
    auto* validate = app.add_subcommand("validate", "run the identity validation suite");
    validate->add_option("--grid", val_args.cfg.grid, "random tuples per row");
    validate->add_option("--seed", val_args.cfg.seed, "random seed");
    validate->add_option("--tol", val_args.cfg.tol, "tolerance scale (1e-8 = default thresholds)");
    validate->add_flag("--json", val_args.json, "print the report as JSON");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "tabulate over a range of x");
    add_params(sweep, sweep_args.params);
    sweep->add_option("--x-start", sweep_args.x_start)->required();
    sweep->add_option("--x-end", sweep_args.x_end)->required();
    sweep->add_option("--steps", sweep_args.steps)->required();
    sweep->add_option("--methods", sweep_args.methods, "comma-separated methods");
    sweep->add_option("--out", sweep_args.out, "output path, - for stdout");
    sweep->add_option("--format", sweep_args.format)->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--rel-err", sweep_args.rel_err, "target relative error");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "time series against quadrature");
    bench->add_option("--suite", bench_args.suite);
    bench->add_option("--repeats", bench_args.repeats);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*eval) return run_eval(eval_args);
        if (*validate) return run_validate(val_args);
        if (*sweep) return run_sweep_cmd(sweep_args);
        if (*bench) return run_bench(bench_args);
    } catch (const fourgamma::DomainError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const fourgamma::Error& e) {
        std::cerr << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}
