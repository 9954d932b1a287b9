#include "CLI11.hpp"

#include "risnoma/bounds.hpp"
#include "risnoma/config.hpp"
#include "risnoma/csvplot.hpp"
#include "risnoma/errors.hpp"
#include "risnoma/montecarlo.hpp"
#include "risnoma/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

namespace {

using namespace risnoma;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Options shared by the subcommands; pointers record which were given.
struct CommonOpts {
    std::string config_path;
    std::uint64_t seed = 0;
    long long trials = 0;
    int workers = 0;
    CLI::Option *config_opt = nullptr;
    CLI::Option *seed_opt = nullptr;
    CLI::Option *trials_opt = nullptr;
    CLI::Option *workers_opt = nullptr;
};

void add_config_opt(CLI::App *cmd, CommonOpts &o) {
    o.config_opt = cmd->add_option("--config", o.config_path,
                                   "Scenario config file (key=value format)");
}

void add_mc_opts(CLI::App *cmd, CommonOpts &o) {
    o.seed_opt = cmd->add_option("--seed", o.seed, "Override the Monte-Carlo seed");
    o.trials_opt =
        cmd->add_option("--trials", o.trials, "Override the Monte-Carlo trial count");
    o.workers_opt =
        cmd->add_option("--workers", o.workers, "Override the worker thread count");
}

LoadedConfig load_with_overrides(const CommonOpts &o) {
    LoadedConfig lc;
    if (o.config_opt != nullptr && o.config_opt->count() > 0)
        lc = load_config(o.config_path);
    if (o.seed_opt != nullptr && o.seed_opt->count() > 0)
        lc.mc.seed = o.seed;
    if (o.trials_opt != nullptr && o.trials_opt->count() > 0)
        lc.mc.n_trials = o.trials;
    if (o.workers_opt != nullptr && o.workers_opt->count() > 0)
        lc.mc.n_workers = o.workers;
    lc.scenario.validate();
    lc.mc.validate();
    return lc;
}

std::string sweep_x_label(const std::string &variable) {
    if (variable == "snr_db")
        return "transmit SNR (dB)";
    if (variable == "m_total")
        return "reflecting elements";
    if (variable == "eta")
        return "near-receiver element fraction";
    return "near-receiver power fraction";
}

int run_bounds_cmd(const LoadedConfig &lc) {
    const RateBounds rb = rate_bounds(lc.scenario);
    const auto &p = lc.scenario.partition;
    std::cout << "m_total = " << p.m_total << " (m1 = " << p.m1
              << ", m2 = " << p.m2 << ")\n"
              << "rho_r = " << fmt17(lc.scenario.rho_r) << '\n'
              << "lower_r1_bps_hz = " << fmt17(rb.lower.r1) << '\n'
              << "lower_r2_bps_hz = " << fmt17(rb.lower.r2) << '\n'
              << "lower_sum_bps_hz = " << fmt17(rb.lower.r1 + rb.lower.r2) << '\n'
              << "upper_r1_bps_hz = " << fmt17(rb.upper.r1) << '\n'
              << "upper_r2_bps_hz = " << fmt17(rb.upper.r2) << '\n'
              << "upper_sum_bps_hz = " << fmt17(rb.upper.r1 + rb.upper.r2) << '\n';
    if (rb.dr1_shape_nudged)
        std::cout << "note: near-receiver gain fit landed on a singular shape "
                     "value and was nudged\n";
    if (rb.dr2_shape_nudged)
        std::cout << "note: far-receiver gain fit landed on a singular shape "
                     "value and was nudged\n";
    return 0;
}

void print_estimate(const char *key, const ErgodicEstimate &est) {
    std::cout << key << " = " << fmt17(est.mean) << '\n'
              << key << "_stderr = " << fmt17(est.std_err) << '\n';
}

int run_mc_cmd(const LoadedConfig &lc) {
    const ErgodicPair noma = estimate_noma(lc.scenario, lc.mc);
    const ErgodicPair oma = estimate_oma(lc.scenario, lc.mc);
    std::cout << "n_trials = " << lc.mc.n_trials << '\n'
              << "seed = " << lc.mc.seed << '\n';
    print_estimate("mc_noma_r1_bps_hz", noma.dr1);
    print_estimate("mc_noma_r2_bps_hz", noma.dr2);
    print_estimate("mc_noma_sum_bps_hz", noma.sum);
    print_estimate("mc_oma_r1_bps_hz", oma.dr1);
    print_estimate("mc_oma_r2_bps_hz", oma.dr2);
    print_estimate("mc_oma_sum_bps_hz", oma.sum);
    return 0;
}

int run_sweep_cmd(const LoadedConfig &lc, const std::string &out_dir, bool plot) {
    if (lc.sweep.variable.empty() && lc.sweep.grid.empty() &&
        lc.sweep.outputs.empty())
        throw ConfigError("the sweep command needs sweep.variable, sweep.grid "
                          "and sweep.outputs in the config file");
    const SweepResult result = run_sweep(lc.scenario, lc.sweep, lc.mc);

    const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create directory '" + dir.string() +
                      "': " + ec.message());

    const std::string csv_path = (dir / "sweep.csv").string();
    emit_csv(result, csv_path);
    std::cout << "wrote " << csv_path << '\n';

    if (plot) {
        const bool ee_mode = std::count(result.outputs.begin(),
                                        result.outputs.end(), "ee") > 0;
        PlotSpec spec;
        spec.title = "Parameter sweep";
        spec.x_label = sweep_x_label(result.variable);
        spec.y_label = ee_mode ? "energy efficiency (bits/Joule/Hz)"
                               : "spectral efficiency (bits/s/Hz)";
        const std::string svg_path = (dir / "sweep.svg").string();
        emit_plot(build_plot_series(result, ""), spec, svg_path);
        std::cout << "wrote " << svg_path << '\n';
    }
    return 0;
}

int run_reproduce_cmd(const LoadedConfig &lc, const std::string &figure,
                      const std::string &out_dir, bool csv_flag, bool plot_flag) {
    const bool want_csv = csv_flag || !plot_flag;
    const bool want_plot = plot_flag || !csv_flag;
    reproduce_figure(figure, lc.scenario, lc.mc, out_dir, want_csv, want_plot);
    std::cout << "wrote " << figure << " outputs to " << out_dir << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Link-level toolkit for a surface-assisted two-receiver "
                 "downlink: closed-form ergodic-rate bounds, seeded Monte-Carlo "
                 "estimates, parameter sweeps, and canned figure experiments."};
    app.require_subcommand(1);

    CommonOpts bounds_opts;
    CLI::App *cmd_bounds = app.add_subcommand(
        "bounds", "Print the closed-form ergodic-rate bounds for one scenario");
    add_config_opt(cmd_bounds, bounds_opts);

    CommonOpts mc_opts;
    CLI::App *cmd_mc = app.add_subcommand(
        "mc", "Monte-Carlo ergodic-rate estimates for one scenario");
    add_config_opt(cmd_mc, mc_opts);
    add_mc_opts(cmd_mc, mc_opts);

    CommonOpts sweep_opts;
    std::string sweep_out = "out";
    bool sweep_plot = false;
    CLI::App *cmd_sweep = app.add_subcommand(
        "sweep", "Run the sweep described by the config's sweep.* keys");
    add_config_opt(cmd_sweep, sweep_opts);
    sweep_opts.config_opt->required();
    add_mc_opts(cmd_sweep, sweep_opts);
    cmd_sweep->add_option("--out", sweep_out, "Output directory")
        ->capture_default_str();
    cmd_sweep->add_flag("--plot", sweep_plot, "Also render sweep.svg");

    CommonOpts repro_opts;
    std::string repro_figure;
    std::string repro_out = "out";
    bool repro_csv = false;
    bool repro_plot = false;
    CLI::App *cmd_repro = app.add_subcommand(
        "reproduce", "Re-run a canned figure experiment (fig2, fig3, fig4)");
    cmd_repro->add_option("figure", repro_figure, "fig2 | fig3 | fig4")
        ->required();
    add_config_opt(cmd_repro, repro_opts);
    add_mc_opts(cmd_repro, repro_opts);
    cmd_repro->add_option("--out", repro_out, "Output directory")
        ->capture_default_str();
    cmd_repro->add_flag("--csv", repro_csv, "Write only the CSV tables");
    cmd_repro->add_flag("--plot", repro_plot, "Write only the SVG figure");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_bounds->parsed())
            return run_bounds_cmd(load_with_overrides(bounds_opts));
        if (cmd_mc->parsed())
            return run_mc_cmd(load_with_overrides(mc_opts));
        if (cmd_sweep->parsed())
            return run_sweep_cmd(load_with_overrides(sweep_opts), sweep_out,
                                 sweep_plot);
        if (cmd_repro->parsed())
            return run_reproduce_cmd(load_with_overrides(repro_opts),
                                     repro_figure, repro_out, repro_csv,
                                     repro_plot);
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const risnoma::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const risnoma::NumericError &e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const risnoma::IoError &e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
