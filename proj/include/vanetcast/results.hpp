#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "vanetcast/connectivity.hpp"
#include "vanetcast/errors.hpp"
#include "vanetcast/estimate.hpp"

namespace vanetcast {

// One sweep point. Matches the CSV schema exactly; for the unit disk model
// the alpha and sigma fields are empty. runtime_s is wall-clock and is the
// one field excluded from determinism guarantees; it can be omitted
// entirely for byte-stable output.
struct ResultRow {
    Method method = Method::simulation;
    ConnectionModel model;
    double rho = 0.0;
    double road_length = 0.0;
    double pm = 0.0;
    std::uint64_t trials = 0;
    double p_succ = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;
    double runtime_s = 0.0;
    bool has_runtime = true;
};

inline constexpr std::string_view kCsvHeader =
    "method,model,r,alpha,sigma,rho,L,pm,trials,p_succ,stderr,ci_low,ci_high,seed,runtime_s";

inline std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string fmt_u(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(v));
    return buf;
}

namespace detail {

// Field values shared by the CSV and JSON writers so both formats carry
// identical numeric text. Empty string = absent (null in JSON).
inline std::vector<std::string> row_fields(const ResultRow& row) {
    const bool log_normal = row.model.kind == ConnectionModel::Kind::log_normal;
    char runtime[32] = "";
    if (row.has_runtime)
        std::snprintf(runtime, sizeof runtime, "%.3f", row.runtime_s);
    return {
        method_name(row.method),
        model_name(row.model),
        fmt_g(row.model.range_m),
        log_normal ? fmt_g(row.model.path_loss_exponent) : "",
        log_normal ? fmt_g(row.model.shadowing_stddev) : "",
        fmt_g(row.rho),
        fmt_g(row.road_length),
        fmt_g(row.pm),
        fmt_u(row.trials),
        fmt_g(row.p_succ),
        fmt_g(row.std_error),
        fmt_g(row.ci_low),
        fmt_g(row.ci_high),
        fmt_u(row.seed),
        runtime,
    };
}

inline std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            return out;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

inline double parse_double_field(const std::string& text, const char* what, int line_no) {
    char* rest = nullptr;
    const double v = std::strtod(text.c_str(), &rest);
    if (rest == text.c_str() || *rest != '\0')
        throw ParseError(std::string("bad ") + what + " '" + text + "'", line_no);
    return v;
}

inline std::uint64_t parse_uint_field(const std::string& text, const char* what, int line_no) {
    char* rest = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &rest, 10);
    if (rest == text.c_str() || *rest != '\0')
        throw ParseError(std::string("bad ") + what + " '" + text + "'", line_no);
    return v;
}

}  // namespace detail

inline std::string to_csv(const std::vector<ResultRow>& rows) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& row : rows) {
        const auto fields = detail::row_fields(row);
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ',';
            out += fields[i];
        }
        out += '\n';
    }
    return out;
}

// JSON mirror of the CSV: an array of records with identical field names;
// empty CSV fields become null.
inline std::string to_json(const std::vector<ResultRow>& rows) {
    static constexpr const char* kNames[] = {
        "method", "model", "r", "alpha", "sigma", "rho", "L", "pm",
        "trials", "p_succ", "stderr", "ci_low", "ci_high", "seed", "runtime_s"};
    static constexpr bool kQuoted[] = {true,  true,  false, false, false,
                                       false, false, false, false, false,
                                       false, false, false, false, false};
    std::string out = "[\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto fields = detail::row_fields(rows[r]);
        out += "  {";
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ", ";
            out += '"';
            out += kNames[i];
            out += "\": ";
            if (fields[i].empty())
                out += "null";
            else if (kQuoted[i])
                out += '"' + fields[i] + '"';
            else
                out += fields[i];
        }
        out += r + 1 < rows.size() ? "},\n" : "}\n";
    }
    out += "]\n";
    return out;
}

inline std::vector<ResultRow> parse_csv(std::string_view text) {
    std::vector<ResultRow> rows;
    int line_no = 0;
    std::size_t start = 0;
    bool saw_header = false;
    while (start < text.size()) {
        const std::size_t end = text.find('\n', start);
        std::string_view line = text.substr(
            start, end == std::string_view::npos ? text.size() - start : end - start);
        ++line_no;
        start = end == std::string_view::npos ? text.size() : end + 1;
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != kCsvHeader)
                throw ParseError("unexpected CSV header '" + std::string(line) + "'", line_no);
            saw_header = true;
            continue;
        }
        const auto f = detail::split(line, ',');
        if (f.size() != 15)
            throw ParseError("expected 15 fields, got " + std::to_string(f.size()), line_no);
        ResultRow row;
        row.method = parse_method(f[0]);
        const double r = detail::parse_double_field(f[2], "r", line_no);
        if (f[1] == "unit_disk") {
            if (!f[3].empty() || !f[4].empty())
                throw ParseError("unit_disk rows must leave alpha and sigma empty", line_no);
            row.model = ConnectionModel::unit_disk(r);
        } else if (f[1] == "log_normal") {
            row.model = ConnectionModel::log_normal(
                r, detail::parse_double_field(f[3], "alpha", line_no),
                detail::parse_double_field(f[4], "sigma", line_no));
        } else {
            throw ParseError("unknown model '" + f[1] + "'", line_no);
        }
        row.rho = detail::parse_double_field(f[5], "rho", line_no);
        row.road_length = detail::parse_double_field(f[6], "L", line_no);
        row.pm = detail::parse_double_field(f[7], "pm", line_no);
        row.trials = detail::parse_uint_field(f[8], "trials", line_no);
        row.p_succ = detail::parse_double_field(f[9], "p_succ", line_no);
        row.std_error = detail::parse_double_field(f[10], "stderr", line_no);
        row.ci_low = detail::parse_double_field(f[11], "ci_low", line_no);
        row.ci_high = detail::parse_double_field(f[12], "ci_high", line_no);
        row.seed = detail::parse_uint_field(f[13], "seed", line_no);
        if (f[14].empty()) {
            row.has_runtime = false;
        } else {
            row.has_runtime = true;
            row.runtime_s = detail::parse_double_field(f[14], "runtime_s", line_no);
        }
        rows.push_back(row);
    }
    if (!saw_header) throw ParseError("empty CSV", 1);
    return rows;
}

}  // namespace vanetcast
