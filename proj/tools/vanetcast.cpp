// vanetcast: estimate the probability that a broadcast warning message
// survives multi-hop dissemination through a 1-D vehicular network that
// contains randomly placed message-tampering relays.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "vanetcast/runner.hpp"

namespace {

using namespace vanetcast;

struct KeyOverride {
    std::string key;
    std::string value;
};

// Registers one --key option per config key on the subcommand; recorded
// overrides are applied on top of the config file in flag order.
struct ConfigFlags {
    std::string config_path;
    std::vector<std::pair<std::string, std::string*>> bound;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "experiment config file (key = value lines)");
        for (const char* key :
             {"model", "r", "alpha", "sigma", "L", "rho", "pm", "method", "trials", "seed",
              "samples_per_n", "tail_eps", "grid_step", "max_exact_n", "quadrature_max_n",
              "threads", "sweep", "values", "fixture", "fixed_flags", "out", "omit_runtime"}) {
            auto* slot = new std::string();  // owned by the app's lifetime; freed at exit
            bound.emplace_back(key, slot);
            cmd->add_option(std::string("--") + key, *slot,
                            std::string("override config key '") + key + "'");
        }
    }

    ExperimentConfig build(CLI::App* cmd) const {
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = parse_config(read_file(config_path));
        for (const auto& [key, slot] : bound) {
            if (cmd->count(std::string("--") + key) == 0) continue;
            try {
                apply_config_key(cfg, key, *slot, 0);
            } catch (const ParseError& e) {
                throw InputError("--" + key + ": " + e.message);
            }
        }
        return cfg;
    }
};

void print_rows(const std::vector<ResultRow>& rows) {
    std::printf("%-10s %-10s %10s %10s %10s %10s %10s %10s\n", "method", "model", "L", "rho",
                "pm", "p_succ", "stderr", "trials");
    for (const auto& row : rows)
        std::printf("%-10s %-10s %10g %10g %10g %10.6f %10.2g %10llu\n",
                    method_name(row.method).c_str(), model_name(row.model).c_str(),
                    row.road_length, row.rho, row.pm, row.p_succ, row.std_error,
                    static_cast<unsigned long long>(row.trials));
}

int run_experiment(const ConfigFlags& flags, CLI::App* cmd, std::optional<Method> force_method,
                   bool single_point) {
    ExperimentConfig cfg = flags.build(cmd);
    if (force_method) cfg.method = *force_method;
    if (single_point) {
        cfg.sweep.clear();
        cfg.values.clear();
    }
    const auto rows = run_config(cfg);
    print_rows(rows);
    write_outputs(rows, cfg);
    for (const auto& path : cfg.out) std::fprintf(stderr, "wrote %s\n", path.c_str());
    return 0;
}

int run_threshold(const ConfigFlags& flags, CLI::App* cmd, double epsilon) {
    ExperimentConfig cfg = flags.build(cmd);
    if (cfg.sweep.empty()) cfg.sweep = "pm";
    if (cfg.sweep != "pm") throw InputError("threshold detection sweeps pm, not " + cfg.sweep);
    const auto rows = run_config(cfg);
    print_rows(rows);
    write_outputs(rows, cfg);
    std::vector<std::pair<double, double>> curve;
    curve.reserve(rows.size());
    for (const auto& row : rows) curve.emplace_back(row.pm, row.p_succ);
    const auto pth = find_threshold(curve, epsilon);
    if (pth)
        std::printf("p_th = %g (epsilon = %g)\n", *pth, epsilon);
    else
        std::printf("p_th = none (epsilon = %g)\n", epsilon);
    return 0;
}

int run_plot(const std::string& csv_path, const std::string& x_param,
             const std::string& out_path) {
    const auto rows = parse_csv(read_file(csv_path));
    AxesSpec axes;
    axes.x_param = x_param;
    write_file(out_path, emit_plot(rows, axes));
    std::fprintf(stderr, "wrote %s\n", out_path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "vanetcast: warning-message dissemination reliability in 1-D vehicular networks"};
    app.require_subcommand(1);

    ConfigFlags sim_flags, ana_flags, orc_flags, sweep_flags, thr_flags;
    auto* simulate =
        app.add_subcommand("simulate", "Monte Carlo estimate at a single scenario point");
    sim_flags.attach(simulate);
    auto* analytic =
        app.add_subcommand("analytic", "analytical recursion estimate at a single point");
    ana_flags.attach(analytic);
    auto* oracle =
        app.add_subcommand("oracle", "exact enumeration for a tiny topology fixture");
    orc_flags.attach(oracle);
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep (method from config)");
    sweep_flags.attach(sweep);

    double epsilon = 0.02;
    auto* threshold =
        app.add_subcommand("threshold", "sweep pm and report where p_succ reaches 0.5");
    thr_flags.attach(threshold);
    threshold->add_option("--epsilon", epsilon, "|p_succ - 0.5| tolerance (default 0.02)");

    std::string plot_csv, plot_x = "pm", plot_out;
    auto* plot = app.add_subcommand("plot", "render a results CSV as an SVG chart");
    plot->add_option("--from-csv", plot_csv, "results CSV produced by this tool")->required();
    plot->add_option("--x", plot_x, "x-axis parameter: pm|L|rho (default pm)");
    plot->add_option("--out", plot_out, "output SVG path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed())
            return run_experiment(sim_flags, simulate, Method::simulation, true);
        if (analytic->parsed())
            return run_experiment(ana_flags, analytic, Method::analytic, true);
        if (oracle->parsed()) return run_experiment(orc_flags, oracle, Method::oracle, true);
        if (sweep->parsed()) return run_experiment(sweep_flags, sweep, std::nullopt, false);
        if (threshold->parsed()) return run_threshold(thr_flags, threshold, epsilon);
        if (plot->parsed()) return run_plot(plot_csv, plot_x, plot_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
