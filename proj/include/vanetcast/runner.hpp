#pragma once

#include <chrono>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vanetcast/analytic.hpp"
#include "vanetcast/config.hpp"
#include "vanetcast/oracle.hpp"
#include "vanetcast/plot.hpp"
#include "vanetcast/results.hpp"
#include "vanetcast/sim_engine.hpp"

namespace vanetcast {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << content;
}

namespace detail {

inline Scenario scenario_for_point(const ExperimentConfig& cfg, double value) {
    double L = cfg.road_length, rho = cfg.rho, pm = cfg.pm;
    if (cfg.sweep == "pm") pm = value;
    if (cfg.sweep == "L") L = value;
    if (cfg.sweep == "rho") rho = value;
    return Scenario(L, rho, pm, cfg.connection_model());
}

inline Estimate run_point(const ExperimentConfig& cfg, const Scenario& scenario,
                          const std::optional<Topology>& fixture) {
    switch (cfg.method) {
        case Method::simulation:
            if (fixture && cfg.fixed_flags)
                return estimate_p_succ_on(*fixture, scenario, cfg.trials, cfg.seed,
                                          cfg.threads);
            if (fixture)
                return estimate_p_succ_positions(fixture->positions, scenario, cfg.trials,
                                                 cfg.seed, cfg.threads);
            return estimate_p_succ(scenario, cfg.trials, cfg.seed, cfg.threads);
        case Method::analytic: {
            AnalyticOptions opt;
            opt.tail_mass = cfg.tail_eps;
            opt.samples_per_n = cfg.samples_per_n;
            opt.grid_step = cfg.grid_step;
            opt.max_exact_n = cfg.max_exact_n;
            opt.quadrature_max_n = cfg.quadrature_max_n;
            opt.threads = cfg.threads;
            return analytic_p_succ(scenario, opt, cfg.seed);
        }
        case Method::oracle: {
            const double p =
                cfg.fixed_flags
                    ? exact_p_succ_fixed(*fixture, scenario.model, scenario.road_length)
                    : exact_p_succ_marginal(fixture->positions, scenario.model,
                                            scenario.road_length, scenario.malice_prob);
            return make_exact_estimate(p, Method::oracle, cfg.seed);
        }
    }
    throw InputError("unknown method");
}

}  // namespace detail

namespace detail {

inline ResultRow make_row(const ExperimentConfig& cfg, const Scenario& scenario,
                          const Estimate& est, double runtime_s) {
    ResultRow row;
    row.method = cfg.method;
    row.model = scenario.model;
    row.rho = scenario.density;
    row.road_length = scenario.road_length;
    row.pm = scenario.malice_prob;
    row.trials = est.trials;
    row.p_succ = est.p_succ;
    row.std_error = est.std_error;
    row.ci_low = est.ci_low;
    row.ci_high = est.ci_high;
    row.seed = est.master_seed;
    row.runtime_s = runtime_s;
    row.has_runtime = !cfg.omit_runtime;
    return row;
}

}  // namespace detail

// Runs the configured experiment: one row per sweep value (or a single row
// when no sweep is set), in sweep order. Deterministic for a given config
// and master seed, except for the recorded runtimes.
inline std::vector<ResultRow> run_config(const ExperimentConfig& cfg) {
    validate_config(cfg);
    std::optional<Topology> fixture;
    if (!cfg.fixture.empty()) fixture = parse_topology(read_file(cfg.fixture));

    std::vector<ResultRow> rows;

    // an analytic pm sweep shares layout samples and message walks across
    // all points; the values match per-point runs exactly
    if (cfg.method == Method::analytic && cfg.sweep == "pm") {
        const Scenario base = detail::scenario_for_point(cfg, cfg.values.front());
        AnalyticOptions opt;
        opt.tail_mass = cfg.tail_eps;
        opt.samples_per_n = cfg.samples_per_n;
        opt.grid_step = cfg.grid_step;
        opt.max_exact_n = cfg.max_exact_n;
        opt.quadrature_max_n = cfg.quadrature_max_n;
        opt.threads = cfg.threads;
        const auto t0 = std::chrono::steady_clock::now();
        const auto estimates = analytic_p_succ_multi(base, cfg.values, opt, cfg.seed);
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        const double each = dt.count() / static_cast<double>(cfg.values.size());
        rows.reserve(cfg.values.size());
        for (std::size_t i = 0; i < cfg.values.size(); ++i)
            rows.push_back(detail::make_row(cfg, detail::scenario_for_point(cfg, cfg.values[i]),
                                            estimates[i], each));
        return rows;
    }

    std::vector<double> points = cfg.values;
    if (cfg.sweep.empty()) points = {0.0};  // placeholder, unused

    rows.reserve(points.size());
    for (const double v : points) {
        const Scenario scenario = detail::scenario_for_point(cfg, v);
        if (fixture) validate_against(*fixture, scenario.road_length);
        const auto t0 = std::chrono::steady_clock::now();
        const Estimate est = detail::run_point(cfg, scenario, fixture);
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        rows.push_back(detail::make_row(cfg, scenario, est, dt.count()));
    }
    return rows;
}

inline std::vector<ResultRow> run_config_text(std::string_view text) {
    return run_config(parse_config(text));
}

// Smallest swept malice probability whose p_succ is within epsilon of the
// 0.5 floor; empty when the curve never reaches it.
inline std::optional<double> find_threshold(std::span<const std::pair<double, double>> curve,
                                            double epsilon) {
    if (curve.empty()) throw InputError("find_threshold needs a non-empty curve");
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (!(curve[i].first > curve[i - 1].first))
            throw InputError("find_threshold needs the curve sorted by pm");
    for (const auto& [pm, p] : curve)
        if (std::abs(p - 0.5) <= epsilon) return pm;
    return std::nullopt;
}

// Writes each configured output path; the extension picks the format.
inline void write_outputs(const std::vector<ResultRow>& rows, const ExperimentConfig& cfg) {
    for (const auto& path : cfg.out) {
        const std::string ext = path.substr(path.rfind('.'));
        if (ext == ".csv") {
            write_file(path, to_csv(rows));
        } else if (ext == ".json") {
            write_file(path, to_json(rows));
        } else {
            AxesSpec axes;
            axes.x_param = cfg.sweep.empty() ? "pm" : cfg.sweep;
            write_file(path, emit_plot(rows, axes));
        }
    }
}

}  // namespace vanetcast
