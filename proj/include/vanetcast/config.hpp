#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "vanetcast/connectivity.hpp"
#include "vanetcast/errors.hpp"
#include "vanetcast/estimate.hpp"
#include "vanetcast/topology.hpp"

namespace vanetcast {

// Experiment description parsed from flat `key = value` lines ('#' starts a
// comment) or assembled from CLI flags, which mirror the config keys and
// override file values.
struct ExperimentConfig {
    // scenario
    std::string model = "unit_disk";  // unit_disk | log_normal
    double r = 250.0;
    double alpha = 2.0;  // log_normal only
    double sigma = 4.0;  // log_normal only
    double road_length = 0.0;  // key: L
    double rho = 0.0;
    double pm = 0.0;
    bool has_road_length = false;
    bool has_rho = false;
    bool has_pm = false;

    // method and budgets
    Method method = Method::simulation;
    std::uint64_t trials = 5000;
    std::uint64_t seed = 1;
    std::uint64_t samples_per_n = 5000;  // analytic layout budget per vehicle count
    double tail_eps = 1e-6;
    double grid_step = 1.0;
    std::uint64_t max_exact_n = 12;
    std::uint64_t quadrature_max_n = 0;
    int threads = 0;

    // sweep over one parameter
    std::string sweep;           // "", "pm", "L", "rho"
    std::vector<double> values;  // swept values, in sweep order

    // topology fixture replay (required for the oracle method)
    std::string fixture;
    bool fixed_flags = false;  // oracle: use the fixture's flags instead of marginalizing

    // outputs: paths whose extension picks the writer (.csv | .json | .svg)
    std::vector<std::string> out;
    bool omit_runtime = false;

    ConnectionModel connection_model() const {
        if (model == "unit_disk") return ConnectionModel::unit_disk(r);
        return ConnectionModel::log_normal(r, alpha, sigma);
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

inline double to_double(const std::string& v, const std::string& key, int line) {
    char* rest = nullptr;
    const double x = std::strtod(v.c_str(), &rest);
    if (rest == v.c_str() || *rest != '\0')
        throw ParseError("value '" + v + "' for key '" + key + "' is not a number", line);
    return x;
}

inline std::uint64_t to_uint(const std::string& v, const std::string& key, int line) {
    char* rest = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &rest, 10);
    if (rest == v.c_str() || *rest != '\0' || v.find('-') != std::string::npos)
        throw ParseError("value '" + v + "' for key '" + key + "' is not a non-negative integer",
                         line);
    return x;
}

inline bool to_bool(const std::string& v, const std::string& key, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ParseError("value '" + v + "' for key '" + key + "' is not a boolean", line);
}

inline std::string canonical_param(const std::string& name, int line) {
    if (name == "pm" || name == "malice_prob") return "pm";
    if (name == "L" || name == "road_length") return "L";
    if (name == "rho" || name == "density") return "rho";
    throw ParseError("unknown sweep parameter '" + name + "' (expected pm|L|rho)", line);
}

inline std::vector<double> to_value_list(const std::string& v, const std::string& key,
                                         int line) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= v.size()) {
        std::size_t end = v.find(',', start);
        if (end == std::string::npos) end = v.size();
        const std::string item = trim(std::string_view(v).substr(start, end - start));
        if (!item.empty()) out.push_back(to_double(item, key, line));
        start = end + 1;
    }
    if (out.empty()) throw ParseError("key '" + key + "' needs a non-empty value list", line);
    return out;
}

inline std::vector<std::string> to_path_list(const std::string& v) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= v.size()) {
        std::size_t end = v.find(',', start);
        if (end == std::string::npos) end = v.size();
        const std::string item = trim(std::string_view(v).substr(start, end - start));
        if (!item.empty()) out.push_back(item);
        start = end + 1;
    }
    return out;
}

}  // namespace detail

// Applies one key=value setting. Shared by the file parser and the CLI
// override path so both accept exactly the same keys.
inline void apply_config_key(ExperimentConfig& cfg, const std::string& key,
                             const std::string& value, int line) {
    using namespace detail;
    if (key == "model") {
        if (value != "unit_disk" && value != "log_normal")
            throw ParseError("unknown model '" + value + "' (expected unit_disk|log_normal)",
                             line);
        cfg.model = value;
    } else if (key == "r") {
        cfg.r = to_double(value, key, line);
    } else if (key == "alpha") {
        cfg.alpha = to_double(value, key, line);
    } else if (key == "sigma") {
        cfg.sigma = to_double(value, key, line);
    } else if (key == "L") {
        cfg.road_length = to_double(value, key, line);
        cfg.has_road_length = true;
    } else if (key == "rho") {
        cfg.rho = to_double(value, key, line);
        cfg.has_rho = true;
    } else if (key == "pm") {
        cfg.pm = to_double(value, key, line);
        cfg.has_pm = true;
    } else if (key == "method") {
        try {
            cfg.method = parse_method(value);
        } catch (const InputError& e) {
            throw ParseError(e.what(), line);
        }
    } else if (key == "trials") {
        cfg.trials = to_uint(value, key, line);
    } else if (key == "seed") {
        cfg.seed = to_uint(value, key, line);
    } else if (key == "samples_per_n") {
        cfg.samples_per_n = to_uint(value, key, line);
    } else if (key == "tail_eps") {
        cfg.tail_eps = to_double(value, key, line);
    } else if (key == "grid_step") {
        cfg.grid_step = to_double(value, key, line);
    } else if (key == "max_exact_n") {
        cfg.max_exact_n = to_uint(value, key, line);
    } else if (key == "quadrature_max_n") {
        cfg.quadrature_max_n = to_uint(value, key, line);
    } else if (key == "threads") {
        cfg.threads = static_cast<int>(to_uint(value, key, line));
    } else if (key == "sweep") {
        cfg.sweep = canonical_param(value, line);
    } else if (key == "values") {
        cfg.values = to_value_list(value, key, line);
    } else if (key == "fixture") {
        cfg.fixture = value;
    } else if (key == "fixed_flags") {
        cfg.fixed_flags = to_bool(value, key, line);
    } else if (key == "out") {
        cfg.out = to_path_list(value);
    } else if (key == "omit_runtime") {
        cfg.omit_runtime = to_bool(value, key, line);
    } else {
        throw ParseError("unknown key '" + key + "'", line);
    }
}

inline ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        std::string_view raw = text.substr(
            start, end == std::string_view::npos ? text.size() - start : end - start);
        ++line_no;
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        const std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected `key = value`, got '" + line + "'", line_no);
        const std::string key = detail::trim(std::string_view(line).substr(0, eq));
        const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) throw ParseError("missing key before '='", line_no);
        apply_config_key(cfg, key, value, line_no);
    }
    return cfg;
}

// Cross-field validation once all sources (file + flag overrides) are in.
inline void validate_config(const ExperimentConfig& cfg) {
    const auto need = [&](bool present, const char* key) {
        if (!present && cfg.sweep != key)
            throw InputError(std::string("missing required key '") + key + "'");
    };
    need(cfg.has_road_length, "L");
    need(cfg.has_rho, "rho");
    need(cfg.has_pm, "pm");
    if (!(cfg.r > 0.0)) throw InputError("r must be > 0");
    if (cfg.has_road_length && !(cfg.road_length > 0.0)) throw InputError("L must be > 0");
    if (cfg.has_rho && !(cfg.rho > 0.0)) throw InputError("rho must be > 0");
    if (cfg.has_pm && !(cfg.pm >= 0.0 && cfg.pm <= 1.0))
        throw InputError("pm must be in [0, 1]");
    if (cfg.trials == 0) throw InputError("trials must be >= 1");
    if (cfg.samples_per_n == 0) throw InputError("samples_per_n must be >= 1");
    if (!(cfg.tail_eps > 0.0 && cfg.tail_eps < 1.0))
        throw InputError("tail_eps must be in (0, 1)");
    if (!(cfg.grid_step > 0.0)) throw InputError("grid_step must be > 0");
    if (cfg.model == "log_normal") {
        if (!(cfg.alpha > 0.0)) throw InputError("alpha must be > 0");
        if (!(cfg.sigma > 0.0)) throw InputError("sigma must be > 0");
    }
    if (!cfg.sweep.empty() && cfg.values.empty())
        throw InputError("sweep requires a non-empty `values` list");
    if (cfg.sweep.empty() && !cfg.values.empty())
        throw InputError("`values` requires a `sweep` parameter");
    for (const double v : cfg.values) {
        if (cfg.sweep == "pm" && !(v >= 0.0 && v <= 1.0))
            throw InputError("swept pm values must be in [0, 1]");
        if ((cfg.sweep == "L" || cfg.sweep == "rho") && !(v > 0.0))
            throw InputError("swept " + cfg.sweep + " values must be > 0");
    }
    if (cfg.method == Method::oracle && cfg.fixture.empty())
        throw InputError("oracle method requires a topology `fixture`");
    if (cfg.fixed_flags && cfg.fixture.empty())
        throw InputError("fixed_flags requires a topology `fixture`");
    for (const auto& path : cfg.out) {
        const auto dot = path.rfind('.');
        const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
        if (ext != ".csv" && ext != ".json" && ext != ".svg")
            throw InputError("output path '" + path + "' must end in .csv, .json, or .svg");
    }
}

}  // namespace vanetcast
