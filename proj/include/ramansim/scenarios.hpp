// scenarios.hpp — Named reproduction scenarios and the sweep engine. Each
// scenario writes a deterministic set of files (trajectory CSV, gate-report
// JSON, summary) into the configured output directory and returns the summary
// text; identical configs produce byte-identical outputs.

#pragma once

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ramansim/config.hpp"
#include "ramansim/dynamics.hpp"
#include "ramansim/errors.hpp"
#include "ramansim/gates.hpp"
#include "ramansim/report.hpp"

namespace ramansim::cli {

using dynamics::Trajectory;
using gates::GateKind;
using gates::GateModel;
using gates::GateReport;
using gates::GateSpec;
using hilbert::AtomLevel;
using hilbert::BasisIndex;
using hilbert::Complex;
using hilbert::HilbertSpec;
using hilbert::Matrix;
using hilbert::Vector;
using models::ManifoldSpec;
using models::SystemParams;

struct ScenarioResult {
    std::string summary;                // also written to summary.txt
    std::vector<std::string> files;     // paths written, in emission order
};

// ------------------------------- helpers -------------------------------------

namespace detail {

// Scenario-level integration tolerances: tight enough that norm drift stays
// below 1e-9 over the long detuned runs.
inline constexpr double kOdeRtol = 1e-11;
inline constexpr double kOdeAtol = 1e-13;

inline SystemParams resolve_params(const RunConfig& cfg) {
    SystemParams p = cfg.params;
    if (cfg.delta2_auto) p.delta2 = gates::qpg_detuning_for(p.delta1, p.g_squared());
    return p;
}

inline HilbertSpec scenario_space(Scenario s) {
    return (s == Scenario::qpg_aux) ? HilbertSpec{4, 2, 2} : HilbertSpec{3, 2, 2};
}

inline GateKind scenario_kind(Scenario s) {
    switch (s) {
        case Scenario::qpg: return GateKind::qpg_photon_atom;
        case Scenario::qpg_aux: return GateKind::qpg_aux_atom;
        case Scenario::cnot: return GateKind::cnot;
        case Scenario::swap: return GateKind::swap;
        case Scenario::swap_phase: return GateKind::swap_phase;
        case Scenario::no_stark_compare: return GateKind::qpg_no_stark_2pi;
        default:
            throw contract_error("scenario has no single gate kind");
    }
}

inline double scenario_gate_time(const RunConfig& cfg, GateKind kind, const SystemParams& p) {
    return (cfg.gate_time_override > 0.0) ? cfg.gate_time_override
                                          : gates::default_gate_time(kind, p);
}

inline std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

inline void ensure_output_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw config_error("cannot create output directory '" + dir + "': " + ec.message());
}

inline std::string fmt4(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

inline std::string feasibility_line(const gates::Feasibility& f) {
    return std::string(f.feasible ? "feasible" : "infeasible") + ": value=" + fmt4(f.value);
}

inline std::string report_summary(const GateReport& rep) {
    std::string s;
    s += "scenario=" + std::string(gates::kind_name(rep.kind)) +
         " model=" + report::model_token(rep.model) + "\n";
    s += "delta1=" + report::format_g17(rep.params.delta1) +
         " delta2=" + report::format_g17(rep.params.delta2) +
         " kappa=" + report::format_g17(rep.params.kappa) +
         " phi=" + report::format_g17(rep.params.relative_phase()) +
         " T=" + report::format_g17(rep.gate_time) + "\n";
    s += "fidelity=" + report::format_g17(rep.fidelity) +
         " leakage=" + report::format_g17(rep.leakage) + "\n";
    s += feasibility_line(rep.feasibility) + "\n";
    for (const auto& w : rep.warnings) s += "warning: " + w + "\n";
    return s;
}

// Closed-form (1,0)-manifold trajectory: the detuned solution, or the
// Stark-free Rabi form
inline Trajectory analytic_trajectory(const SystemParams& p, const Vector& d0,
                                      const std::vector<double>& grid, bool stark_free) {
    const ManifoldSpec m{1, 0};
    const auto names = models::manifold_labels(m);
    Trajectory traj;
    traj.model_tag = stark_free ? "analytic_no_stark" : "analytic";
    traj.labels = {hilbert::label_string(names[0]), hilbert::label_string(names[2])};
    for (double t : grid) {
        Complex d1, d3;
        if (stark_free) {
            const double x = p.g_squared() * t / p.delta1;
            d1 = std::cos(x) * d0(0) + Complex(0, 1) * std::sin(x) * d0(1);
            d3 = std::cos(x) * d0(1) + Complex(0, 1) * std::sin(x) * d0(0);
        } else {
            std::tie(d1, d3) = dynamics::analytic_detuned(p, m, d0(0), d0(1), t);
        }
        Vector s(2);
        s << d1, d3;
        traj.times.push_back(t);
        traj.states.push_back(std::move(s));
    }
    return traj;
}

// Manifold trajectory under the configured model, starting from the given
// (d1, d3) pair on the (n=1, mu=0) manifold
inline Trajectory manifold_trajectory(const SystemParams& p, GateModel model, Complex d1_0,
                                      Complex d3_0, const std::vector<double>& grid) {
    const ManifoldSpec m{1, 0};
    switch (model) {
        case GateModel::full: {
            Vector d0(3);
            d0 << d1_0, 0.0, d3_0;
            return dynamics::evolve_ode(dynamics::RhsKind::full_manifold, p, m, d0, grid,
                                        kOdeRtol, kOdeAtol);
        }
        case GateModel::effective_stark: {
            Vector d0(2);
            d0 << d1_0, d3_0;
            return dynamics::evolve_ode(dynamics::RhsKind::adiabatic, p, m, d0, grid,
                                        kOdeRtol, kOdeAtol);
        }
        case GateModel::effective_no_stark: {
            Vector d0(2);
            d0 << d1_0, d3_0;
            return analytic_trajectory(p, d0, grid, true);
        }
        case GateModel::analytic: {
            Vector d0(2);
            d0 << d1_0, d3_0;
            return analytic_trajectory(p, d0, grid, false);
        }
    }
    throw contract_error("manifold_trajectory: unknown model");
}

struct Emitted {
    std::vector<std::string> files;
    void add(const std::string& path) { files.push_back(path); }
};

} // namespace detail

// --------------------------- gate-report scenarios ---------------------------

namespace detail {

inline ScenarioResult run_gate_scenario(const RunConfig& cfg) {
    const SystemParams p = resolve_params(cfg);
    const HilbertSpec space = scenario_space(cfg.scenario);
    const GateKind kind = scenario_kind(cfg.scenario);
    const double T = scenario_gate_time(cfg, kind, p);

    GateReport rep;
    if (cfg.scenario == Scenario::cnot) {
        rep = gates::cnot_via_sandwich(p, space, cfg.model);
    } else {
        rep = gates::evaluate_truth_table(GateSpec{kind, cfg.model, p, T}, space);
    }

    // trajectory of the Raman-active column: d3 for the photon/atom gates,
    // d1 for the auxiliary and SWAP families (input |g>|e_R>)
    const double t_end = cfg.t_end_auto ? T : cfg.t_end;
    const auto grid = dynamics::uniform_grid(0.0, t_end, std::size_t(cfg.n_samples));
    const bool d3_start = (kind == GateKind::qpg_photon_atom || kind == GateKind::cnot ||
                           kind == GateKind::qpg_no_stark_2pi);
    const Trajectory traj = manifold_trajectory(p, cfg.model, d3_start ? 0.0 : 1.0,
                                                d3_start ? 1.0 : 0.0, grid);

    ScenarioResult res;
    res.summary = report_summary(rep);
    if (!cfg.output.empty()) {
        ensure_output_dir(cfg.output);
        const std::string rp = join_path(cfg.output, "report.json");
        report::write_gate_report(rep, rp);
        res.files.push_back(rp);
        const std::string tp = join_path(cfg.output, "trajectory.csv");
        report::emit_trajectory_csv(traj, tp);
        res.files.push_back(tp);
        const std::string sp = join_path(cfg.output, "summary.txt");
        report::write_text_file(sp, res.summary);
        res.files.push_back(sp);
    }
    return res;
}

// Stark-free 2pi pulse next to the same pulse with Stark terms kept: the
// first is the clean phase gate, the second returns to the identity.
inline ScenarioResult run_no_stark_compare(const RunConfig& cfg) {
    SystemParams p = resolve_params(cfg);
    p.delta2 = p.delta1;   // stated under two-photon resonance
    const HilbertSpec space = scenario_space(cfg.scenario);
    const double T = scenario_gate_time(cfg, GateKind::qpg_no_stark_2pi, p);

    const auto rep_clean = gates::evaluate_truth_table(
        GateSpec{GateKind::qpg_no_stark_2pi, GateModel::effective_no_stark, p, T}, space);
    const auto rep_stark = gates::evaluate_truth_table(
        GateSpec{GateKind::qpg_no_stark_2pi, GateModel::effective_stark, p, T}, space);

    const double t_end = cfg.t_end_auto ? T : cfg.t_end;
    const auto grid = dynamics::uniform_grid(0.0, t_end, std::size_t(cfg.n_samples));
    Vector d0(2);
    d0 << 0.0, 1.0;
    const Trajectory traj_clean = analytic_trajectory(p, d0, grid, true);
    const Trajectory traj_stark = analytic_trajectory(p, d0, grid, false);

    ScenarioResult res;
    res.summary = "scenario=no-stark-compare (2pi pulse, two-photon resonance)\n";
    res.summary += "delta=" + report::format_g17(p.delta1) + " T=" + report::format_g17(T) + "\n";
    res.summary += "without Stark terms: fidelity=" + report::format_g17(rep_clean.fidelity) +
                   " (phase gate)\n";
    res.summary += "with Stark terms:    fidelity=" + report::format_g17(rep_stark.fidelity) +
                   " (no phase flip; the pulse closes back to the identity)\n";
    res.summary += feasibility_line(rep_clean.feasibility) + "\n";

    if (!cfg.output.empty()) {
        ensure_output_dir(cfg.output);
        const std::string r1 = join_path(cfg.output, "report_nostark.json");
        report::write_gate_report(rep_clean, r1);
        res.files.push_back(r1);
        const std::string r2 = join_path(cfg.output, "report_stark.json");
        report::write_gate_report(rep_stark, r2);
        res.files.push_back(r2);
        const std::string t1 = join_path(cfg.output, "trajectory_nostark.csv");
        report::emit_trajectory_csv(traj_clean, t1);
        res.files.push_back(t1);
        const std::string t2 = join_path(cfg.output, "trajectory_stark.csv");
        report::emit_trajectory_csv(traj_stark, t2);
        res.files.push_back(t2);
        const std::string sp = join_path(cfg.output, "summary.txt");
        report::write_text_file(sp, res.summary);
        res.files.push_back(sp);
    }
    return res;
}

// Full-vs-effective propagation error over the gate run for growing delta1;
// the rows of the emitted CSV must decrease strictly.
inline ScenarioResult run_adiabatic_check(const RunConfig& cfg) {
    const HilbertSpec space = scenario_space(cfg.scenario);
    const auto psi0 = hilbert::make_basis_state(space, {AtomLevel::f, 0, 1});

    std::string csv = "delta1,infidelity\n";
    std::string summary = "scenario=adiabatic-check (max over the run of 1 - |<eff|full>|)\n";
    std::vector<double> errs;
    for (double delta1 : {20.0, 50.0, 100.0}) {
        SystemParams p = cfg.params;
        p.delta1 = delta1;
        p.delta2 = gates::qpg_detuning_for(delta1, p.g_squared());
        const double T = gates::qpg_gate_time(delta1, p.g_squared());
        const int steps = cfg.n_samples;
        const double dt = T / steps;
        const Matrix u_full =
            dynamics::propagator(models::full_rotated_hamiltonian(p, space), dt);
        const Matrix u_eff =
            dynamics::propagator(models::effective_hamiltonian(p, space, true), dt);
        Vector full = psi0.amps;
        Vector eff = psi0.amps;
        double err = 0.0;
        for (int i = 0; i < steps; ++i) {
            full = u_full * full;
            eff = u_eff * eff;
            err = std::max(err, 1.0 - std::abs((eff.adjoint() * full).value()));
        }
        errs.push_back(err);
        csv += report::format_g17(delta1) + "," + report::format_g17(err) + "\n";
        summary += "delta1=" + report::format_g17(delta1) +
                   " infidelity=" + report::format_g17(err) + "\n";
    }
    const bool monotone = errs[0] > errs[1] && errs[1] > errs[2];
    summary += std::string("strictly decreasing: ") + (monotone ? "yes" : "NO") + "\n";

    ScenarioResult res;
    res.summary = std::move(summary);
    if (!cfg.output.empty()) {
        ensure_output_dir(cfg.output);
        const std::string cp = join_path(cfg.output, "adiabatic.csv");
        report::write_text_file(cp, csv);
        res.files.push_back(cp);
        const std::string sp = join_path(cfg.output, "summary.txt");
        report::write_text_file(sp, res.summary);
        res.files.push_back(sp);
    }
    return res;
}

// No-jump decay of the phase-gate run: survival against the e^{-kappa t} scale
inline ScenarioResult run_decay_check(const RunConfig& cfg) {
    const SystemParams p = resolve_params(cfg);
    const HilbertSpec space = scenario_space(cfg.scenario);
    const double T = scenario_gate_time(cfg, GateKind::qpg_photon_atom, p);
    const double t_end = cfg.t_end_auto ? T : cfg.t_end;
    const auto grid = dynamics::uniform_grid(0.0, t_end, std::size_t(cfg.n_samples));

    const Matrix gen = dynamics::full_decay_generator(p, space);
    const Matrix u_dt = dynamics::general_propagator(gen, grid[1] - grid[0]);
    Vector psi = hilbert::make_basis_state(space, {AtomLevel::f, 0, 1}).amps;

    const auto labels = models::manifold_labels(ManifoldSpec{1, 0});
    std::vector<int> idx;
    for (const auto& l : labels) idx.push_back(hilbert::basis_index(space, l));

    Trajectory traj;
    traj.model_tag = "full_decay";
    for (const auto& l : labels) traj.labels.push_back(hilbert::label_string(l));
    std::string decay_csv = "t,survival,exp_bound\n";
    double survival_T = 1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0) psi = u_dt * psi;
        Vector s(3);
        for (int k = 0; k < 3; ++k) s(k) = psi(idx[k]);
        traj.times.push_back(grid[i]);
        traj.states.push_back(std::move(s));
        const double surv = psi.squaredNorm();
        survival_T = surv;
        decay_csv += report::format_g17(grid[i]) + "," + report::format_g17(surv) + "," +
                     report::format_g17(std::exp(-p.kappa * grid[i])) + "\n";
    }

    const auto feas = gates::decay_feasibility(p.delta1, p.kappa, p.g_squared());
    ScenarioResult res;
    res.summary = "scenario=decay-check\n";
    res.summary += "delta1=" + report::format_g17(p.delta1) +
                   " delta2=" + report::format_g17(p.delta2) +
                   " kappa=" + report::format_g17(p.kappa) + " T=" + report::format_g17(T) + "\n";
    res.summary += "survival(t_end)=" + report::format_g17(survival_T) +
                   " exp(-kappa t_end)=" + report::format_g17(std::exp(-p.kappa * t_end)) + "\n";
    res.summary += feasibility_line(feas) + "\n";

    if (!cfg.output.empty()) {
        ensure_output_dir(cfg.output);
        const std::string dp = join_path(cfg.output, "decay.csv");
        report::write_text_file(dp, decay_csv);
        res.files.push_back(dp);
        const std::string tp = join_path(cfg.output, "trajectory.csv");
        report::emit_trajectory_csv(traj, tp);
        res.files.push_back(tp);
        const std::string sp = join_path(cfg.output, "summary.txt");
        report::write_text_file(sp, res.summary);
        res.files.push_back(sp);
    }
    return res;
}

} // namespace detail

// -------------------------------- dispatch -----------------------------------

inline ScenarioResult run_scenario(const RunConfig& cfg);   // forward (sweep recurses)

namespace detail {

inline RunConfig sweep_point_config(const RunConfig& cfg, std::size_t point) {
    RunConfig pt = cfg;
    pt.scenario = cfg.sweep.scenario;
    pt.sweep = SweepSpec{};
    pt.workers = 1;
    const double v = cfg.sweep.values[point];
    const std::string& axis = cfg.sweep.axis;
    if (axis == "g1_mag") pt.params.g1_mag = v;
    else if (axis == "g2_mag") pt.params.g2_mag = v;
    else if (axis == "phi1") pt.params.phi1 = v;
    else if (axis == "phi2") pt.params.phi2 = v;
    else if (axis == "phi") { pt.params.phi1 = v; pt.params.phi2 = 0.0; }
    else if (axis == "delta1") pt.params.delta1 = v;
    else if (axis == "delta2") { pt.params.delta2 = v; pt.delta2_auto = false; }
    else if (axis == "kappa") pt.params.kappa = v;
    else if (axis == "gate_time") pt.gate_time_override = v;
    else throw config_error("sweep.axis '" + axis + "' is not sweepable");
    if (!cfg.output.empty()) {
        char name[32];
        std::snprintf(name, sizeof name, "point_%03zu", point);
        pt.output = join_path(cfg.output, name);
    }
    return pt;
}

inline ScenarioResult run_sweep(const RunConfig& cfg) {
    const std::size_t n = cfg.sweep.values.size();
    std::vector<ScenarioResult> results(n);
    std::vector<std::string> errors(n);

    const std::size_t n_workers = std::min<std::size_t>(std::size_t(cfg.workers), n);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                results[i] = run_scenario(sweep_point_config(cfg, i));
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    ScenarioResult res;
    res.summary = "scenario=sweep base=" + std::string(scenario_token(cfg.sweep.scenario)) +
                  " axis=" + cfg.sweep.axis + " points=" + std::to_string(n) + "\n";
    for (std::size_t i = 0; i < n; ++i) {
        res.summary += "--- " + cfg.sweep.axis + "=" + report::format_g17(cfg.sweep.values[i]) + "\n";
        if (!errors[i].empty()) {
            res.summary += "error: " + errors[i] + "\n";
            continue;
        }
        res.summary += results[i].summary;
        for (auto& f : results[i].files) res.files.push_back(f);
    }
    bool any_error = false;
    for (const auto& e : errors) any_error = any_error || !e.empty();
    if (any_error) res.summary += "sweep finished with errors\n";

    if (!cfg.output.empty()) {
        ensure_output_dir(cfg.output);
        const std::string sp = join_path(cfg.output, "summary.txt");
        report::write_text_file(sp, res.summary);
        res.files.push_back(sp);
    }
    return res;
}

} // namespace detail

inline ScenarioResult run_scenario(const RunConfig& cfg) {
    cfg.validate();
    switch (cfg.scenario) {
        case Scenario::qpg:
        case Scenario::qpg_aux:
        case Scenario::cnot:
        case Scenario::swap:
        case Scenario::swap_phase:
            return detail::run_gate_scenario(cfg);
        case Scenario::no_stark_compare:
            return detail::run_no_stark_compare(cfg);
        case Scenario::adiabatic_check:
            return detail::run_adiabatic_check(cfg);
        case Scenario::decay_check:
            return detail::run_decay_check(cfg);
        case Scenario::sweep:
            return detail::run_sweep(cfg);
    }
    throw config_error("unknown scenario");
}

} // namespace ramansim::cli
