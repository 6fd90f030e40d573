#pragma once

// Serialization of results, sweeps and validation reports. JSON field names
// mirror the C++ structs; CSV numerics use 17 significant digits so that
// every printed double parses back to the same value.

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fourgamma/core.hpp"
#include "fourgamma/four_gamma.hpp"
#include "fourgamma/validation.hpp"

namespace fourgamma {

inline constexpr const char* kSweepCsvHeader = "x,method,value,abs_error_estimate,work_used";

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline nlohmann::json to_json(const SeriesDiagnostics& d) {
    return {{"n_terms", d.n_terms},
            {"max_term_magnitude", d.max_term_magnitude},
            {"cancellation_digits", d.cancellation_digits},
            {"pole_hits", d.pole_hits},
            {"diverging", d.diverging}};
}

inline nlohmann::json to_json(const EvalResult& r) {
    return {{"value", r.value},
            {"abs_error_estimate", r.abs_error_estimate},
            {"method_used", std::string(to_string(r.method_used))},
            {"work_used", r.work_used},
            {"diagnostics", r.diagnostics ? to_json(*r.diagnostics) : nlohmann::json(nullptr)}};
}

inline nlohmann::json to_json(const ValidationRecord& r) {
    return {{"identity", r.identity},
            {"grid_size", r.grid_size},
            {"max_normalized_residual", r.max_normalized_residual},
            {"tolerance", r.tolerance},
            {"pass", r.pass}};
}

inline nlohmann::json to_json(const ValidationReport& report) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : report.records) records.push_back(to_json(r));
    return {{"records", records}, {"overall_pass", report.overall_pass}};
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepSpec {
    FourGammaParams params;
    double x_start = 0.0;
    double x_end = 1.0;
    std::int64_t steps = 2;
    std::vector<Method> methods{Method::Auto};
};

struct SweepRow {
    double x = 0.0;
    Method method = Method::Auto;
    std::optional<EvalResult> result;  // empty when the method failed at x
};

inline void validate_sweep(const SweepSpec& s) {
    if (!std::isfinite(s.x_start) || !std::isfinite(s.x_end) || !(s.x_start < s.x_end))
        throw DomainError("x_start", "need x_start < x_end");
    if (s.steps < 2) throw DomainError("steps", "must be >= 2");
    if (s.methods.empty()) throw DomainError("methods", "empty");
}

inline std::vector<double> sweep_points(const SweepSpec& s) {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(s.steps));
    const double span = s.x_end - s.x_start;
    const double last = static_cast<double>(s.steps - 1);
    for (std::int64_t i = 0; i < s.steps; ++i) xs.push_back(s.x_start + span * (static_cast<double>(i) / last));
    xs.back() = s.x_end;
    return xs;
}

/// Rows ordered by x, then by the order of `methods`.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, EvalOptions opts) {
    validate_sweep(spec);
    std::vector<SweepRow> rows;
    for (double x : sweep_points(spec)) {
        for (Method m : spec.methods) {
            opts.method = m;
            SweepRow row{x, m, std::nullopt};
            try {
                row.result = four_gamma(spec.params, x, opts);
            } catch (const Error&) {
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

inline void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << kSweepCsvHeader << '\n';
    for (const auto& r : rows) {
        os << format_double(r.x) << ',' << to_string(r.method) << ',';
        if (r.result)
            os << format_double(r.result->value) << ',' << format_double(r.result->abs_error_estimate) << ','
               << r.result->work_used;
        else
            os << "nan,nan,0";
        os << '\n';
    }
}

inline nlohmann::json to_json(const std::vector<SweepRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j{{"x", r.x}, {"method", std::string(to_string(r.method))}};
        if (r.result) {
            j["value"] = r.result->value;
            j["abs_error_estimate"] = r.result->abs_error_estimate;
            j["work_used"] = r.result->work_used;
        } else {
            j["value"] = nullptr;
            j["abs_error_estimate"] = nullptr;
            j["work_used"] = 0;
        }
        out.push_back(std::move(j));
    }
    return out;
}

}  // namespace fourgamma
