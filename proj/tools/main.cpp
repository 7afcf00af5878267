// ramansim CLI — scenario runner for the detuned-cavity Raman gate simulator.
// Subcommand per scenario plus `verify` (invariant battery) and `sweep`.
// All rates are in units of the reference coupling g, times in 1/g, angles in
// radians. Exit codes: 0 success, 1 config error, 2 physics-contract
// violation, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ramansim/config.hpp"
#include "ramansim/scenarios.hpp"
#include "ramansim/selfcheck.hpp"

namespace {

using namespace ramansim;

struct CliOptions {
    std::string config_path;
    std::string delta1, delta2, kappa, phi, model, t_end, gate_time;
    std::string output;
    int samples = -1;
    int workers = -1;
    long seed = -1;
    // sweep extras
    std::string sweep_scenario, sweep_axis, sweep_values;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config_path, "key-value config file; flags override it");
    cmd->add_option("--delta1", opt.delta1, "one-photon detuning of mode a (units of g)");
    cmd->add_option("--delta2", opt.delta2,
                    "one-photon detuning of mode b, or 'auto' for the phase-gate condition");
    cmd->add_option("--kappa", opt.kappa, "cavity amplitude decay (units of g)");
    cmd->add_option("--phi", opt.phi, "relative coupling phase arg(g1 g2*) (radians)");
    cmd->add_option("--model", opt.model, "full|eff|eff-nostark|analytic");
    cmd->add_option("--t-end", opt.t_end, "trajectory end time (1/g), or 'auto' for the gate time");
    cmd->add_option("--gate-time", opt.gate_time, "override the protocol time (1/g)");
    cmd->add_option("--samples", opt.samples, "trajectory samples (default 400)");
    cmd->add_option("--output", opt.output, "output directory (required for file emission)");
    cmd->add_option("--workers", opt.workers, "concurrent sweep workers");
    cmd->add_option("--seed", opt.seed, "seed for randomized property checks");
}

double parse_flag_double(const std::string& value, const std::string& flag) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw config_error(flag + ": cannot parse '" + value + "' as a number");
    }
}

cli::RunConfig build_config(cli::Scenario scenario, const CliOptions& opt) {
    cli::RunConfig cfg;
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) throw config_error("cannot read config file '" + opt.config_path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        cfg = cli::parse_config_text(ss.str());
    }
    cfg.scenario = scenario;
    if (scenario == cli::Scenario::sweep) {
        if (!opt.sweep_scenario.empty())
            cfg.sweep.scenario = cli::parse_scenario_token(opt.sweep_scenario);
        if (!opt.sweep_axis.empty()) cfg.sweep.axis = opt.sweep_axis;
        if (!opt.sweep_values.empty())
            cfg.sweep.values = cli::detail::parse_double_list(opt.sweep_values, "--values");
    }

    // scenario defaults when neither the config file nor a flag sets them;
    // sweeps default according to the scenario they run per point
    const cli::Scenario base =
        (scenario == cli::Scenario::sweep) ? cfg.sweep.scenario : scenario;
    const bool qpg_like = base == cli::Scenario::qpg || base == cli::Scenario::qpg_aux ||
                          base == cli::Scenario::cnot || base == cli::Scenario::decay_check;
    if (opt.config_path.empty()) {
        if (qpg_like) cfg.delta2_auto = true;
        else cfg.params.delta2 = cfg.params.delta1;
        if (base == cli::Scenario::decay_check) cfg.params.kappa = 0.01;
        if (base == cli::Scenario::swap || base == cli::Scenario::swap_phase)
            cfg.model = gates::GateModel::effective_stark;
    }

    if (!opt.delta1.empty()) {
        cfg.params.delta1 = parse_flag_double(opt.delta1, "--delta1");
        if (cfg.delta2_auto || (opt.delta2.empty() && !qpg_like))
            cfg.params.delta2 = cfg.params.delta1;   // keep resonant scenarios resonant
    }
    if (!opt.delta2.empty()) {
        if (opt.delta2 == "auto") {
            cfg.delta2_auto = true;
        } else {
            cfg.delta2_auto = false;
            cfg.params.delta2 = parse_flag_double(opt.delta2, "--delta2");
        }
    }
    if (!opt.kappa.empty()) cfg.params.kappa = parse_flag_double(opt.kappa, "--kappa");
    if (!opt.phi.empty()) {
        cfg.params.phi1 = parse_flag_double(opt.phi, "--phi");
        cfg.params.phi2 = 0.0;
    }
    if (!opt.model.empty()) cfg.model = report::parse_model_token(opt.model);
    if (!opt.t_end.empty()) {
        if (opt.t_end == "auto") {
            cfg.t_end_auto = true;
            cfg.t_end = 0.0;
        } else {
            cfg.t_end_auto = false;
            cfg.t_end = parse_flag_double(opt.t_end, "--t-end");
        }
    }
    if (!opt.gate_time.empty())
        cfg.gate_time_override = parse_flag_double(opt.gate_time, "--gate-time");
    if (opt.samples >= 0) cfg.n_samples = opt.samples;
    if (!opt.output.empty()) cfg.output = opt.output;
    if (opt.workers >= 0) cfg.workers = opt.workers;
    if (opt.seed >= 0) cfg.seed = std::uint64_t(opt.seed);
    return cfg;
}

int run_verify(const CliOptions& opt) {
    const std::uint64_t seed = (opt.seed >= 0) ? std::uint64_t(opt.seed) : 1;
    const auto results = cli::run_selfcheck(seed);
    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] %s (%s)\n", r.ok ? "ok" : "FAIL", r.name.c_str(), r.detail.c_str());
        if (!r.ok) ++failures;
    }
    std::printf("%zu checks, %d failed\n", results.size(), failures);
    return failures == 0 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Raman-transition cavity gate simulator: quantum phase gate, CNOT and SWAP "
                 "scenarios in a detuned bimodal cavity.\nUnits: frequencies and decay rates in "
                 "the reference coupling g, times in 1/g, angles in radians."};
    app.require_subcommand(1);

    CliOptions opt;
    struct Entry {
        cli::Scenario scenario;
        const char* help;
    };
    const std::vector<Entry> entries{
        {cli::Scenario::qpg, "detuned quantum phase gate (photonic-b qubit x atomic qubit)"},
        {cli::Scenario::qpg_aux, "phase gate on the auxiliary-level basis {|k>,|g>}"},
        {cli::Scenario::cnot, "CNOT via the Hadamard-phase-gate-Hadamard sandwich"},
        {cli::Scenario::swap, "resonant spin-exchange SWAP"},
        {cli::Scenario::swap_phase, "SWAP with an arbitrary coupling phase (--phi)"},
        {cli::Scenario::no_stark_compare,
         "2pi-pulse phase gate without Stark terms vs the same pulse with them"},
        {cli::Scenario::adiabatic_check,
         "full-vs-effective propagation error for delta1 in {20,50,100}"},
        {cli::Scenario::decay_check, "no-jump cavity decay over the phase-gate run"},
        {cli::Scenario::sweep, "run a scenario across a parameter axis"},
    };
    std::vector<std::pair<CLI::App*, cli::Scenario>> cmds;
    for (const auto& e : entries) {
        CLI::App* cmd = app.add_subcommand(cli::scenario_token(e.scenario), e.help);
        add_common_flags(cmd, opt);
        if (e.scenario == cli::Scenario::sweep) {
            cmd->add_option("--scenario", opt.sweep_scenario, "scenario to run per sweep point")
                ->required();
            cmd->add_option("--axis", opt.sweep_axis,
                            "parameter to sweep (SystemParams field, phi, or gate_time)")
                ->required();
            cmd->add_option("--values", opt.sweep_values, "comma-separated values")->required();
        }
        cmds.emplace_back(cmd, e.scenario);
    }
    CLI::App* verify = app.add_subcommand("verify", "run the full invariant suite");
    verify->add_option("--seed", opt.seed, "seed for randomized property checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return run_verify(opt);
        for (const auto& [cmd, scenario] : cmds) {
            if (!cmd->parsed()) continue;
            const cli::RunConfig cfg = build_config(scenario, opt);
            const cli::ScenarioResult res = cli::run_scenario(cfg);
            std::fputs(res.summary.c_str(), stdout);
            if (!res.files.empty()) {
                std::printf("wrote %zu files under %s\n", res.files.size(), cfg.output.c_str());
            }
            return 0;
        }
        return 1;
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const contract_error& e) {
        std::fprintf(stderr, "physics contract violation: %s\n", e.what());
        return 2;
    } catch (const numerical_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
