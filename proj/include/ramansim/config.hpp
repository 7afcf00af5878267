// config.hpp — RunConfig: the scenario runner's configuration, its key-value
// file format (flat sections mirroring the type fields), and the CLI token
// maps. Parsing round-trips: serialize(parse(text)) == canonical form and
// parse(serialize(cfg)) == cfg.

#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ramansim/errors.hpp"
#include "ramansim/gates.hpp"
#include "ramansim/report.hpp"

namespace ramansim::cli {

enum class Scenario {
    qpg,
    qpg_aux,
    cnot,
    swap,
    swap_phase,
    no_stark_compare,
    adiabatic_check,
    decay_check,
    sweep,
};

inline const char* scenario_token(Scenario s) {
    switch (s) {
        case Scenario::qpg: return "qpg";
        case Scenario::qpg_aux: return "qpg-aux";
        case Scenario::cnot: return "cnot";
        case Scenario::swap: return "swap";
        case Scenario::swap_phase: return "swap-phase";
        case Scenario::no_stark_compare: return "no-stark-compare";
        case Scenario::adiabatic_check: return "adiabatic-check";
        case Scenario::decay_check: return "decay-check";
        case Scenario::sweep: return "sweep";
    }
    return "?";
}

inline Scenario parse_scenario_token(const std::string& s) {
    for (Scenario sc : {Scenario::qpg, Scenario::qpg_aux, Scenario::cnot, Scenario::swap,
                        Scenario::swap_phase, Scenario::no_stark_compare,
                        Scenario::adiabatic_check, Scenario::decay_check, Scenario::sweep})
        if (s == scenario_token(sc)) return sc;
    throw config_error("unknown scenario '" + s + "'");
}

// Sweepable parameter axes: SystemParams fields plus gate_time ("phi" is a
// shorthand for phi1, the relative coupling phase with phi2 = 0).
inline const std::vector<std::string>& sweep_axes() {
    static const std::vector<std::string> axes{"g1_mag", "g2_mag", "phi1",  "phi2",
                                               "delta1", "delta2", "kappa", "gate_time", "phi"};
    return axes;
}

struct SweepSpec {
    Scenario scenario = Scenario::swap_phase;   // scenario run per point
    std::string axis;
    std::vector<double> values;

    bool operator==(const SweepSpec&) const = default;
};

struct RunConfig {
    Scenario scenario = Scenario::qpg;
    gates::GateModel model = gates::GateModel::analytic;
    models::SystemParams params;
    bool delta2_auto = false;        // delta2 from the phase-gate condition
    double t_end = 0.0;              // trajectory end; 0 with t_end_auto
    bool t_end_auto = true;          // true: use the gate time
    int n_samples = 400;
    double gate_time_override = 0.0; // 0 = scenario default
    std::string output;              // empty = no file emission
    std::uint64_t seed = 1;
    int workers = 1;
    SweepSpec sweep;

    void validate() const {
        if (n_samples < 2) throw config_error("run.n_samples must be >= 2");
        if (workers < 1) throw config_error("run.workers must be >= 1");
        if (!t_end_auto && !(t_end > 0.0)) throw config_error("run.t_end must be > 0 or auto");
        if (scenario == Scenario::sweep) {
            if (sweep.axis.empty()) throw config_error("sweep.axis is required");
            bool known = false;
            for (const auto& a : sweep_axes()) known = known || (a == sweep.axis);
            if (!known)
                throw config_error("sweep.axis '" + sweep.axis +
                                   "' is not a SystemParams field or gate_time");
            if (sweep.values.empty()) throw config_error("sweep.values is required");
            if (sweep.scenario == Scenario::sweep)
                throw config_error("sweep.scenario cannot itself be 'sweep'");
        }
    }

    bool operator==(const RunConfig&) const = default;
};

// ------------------------------ parsing helpers ------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline double parse_double(const std::string& value, const std::string& field) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw config_error(field + ": cannot parse '" + value + "' as a number");
    }
}

inline long parse_int(const std::string& value, const std::string& field) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw config_error(field + ": cannot parse '" + value + "' as an integer");
    }
}

inline std::vector<double> parse_double_list(const std::string& value, const std::string& field) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw config_error(field + ": empty entry in list");
        out.push_back(parse_double(item, field));
    }
    if (out.empty()) throw config_error(field + ": empty list");
    return out;
}

} // namespace detail

// Key-value document with [run], [params] and optional [sweep] sections;
// '#' starts a comment, keys mirror the RunConfig/SystemParams field names.
inline RunConfig parse_config_text(const std::string& text) {
    using detail::trim;
    RunConfig cfg;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        if (stripped.front() == '[') {
            if (stripped.back() != ']')
                throw config_error("line " + std::to_string(lineno) + ": malformed section header");
            section = stripped.substr(1, stripped.size() - 2);
            if (section != "run" && section != "params" && section != "sweep")
                throw config_error("unknown section [" + section + "]");
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        const std::string field = section + "." + key;

        if (section == "run") {
            if (key == "scenario") cfg.scenario = parse_scenario_token(value);
            else if (key == "model") cfg.model = report::parse_model_token(value);
            else if (key == "t_end") {
                if (value == "auto") { cfg.t_end_auto = true; cfg.t_end = 0.0; }
                else { cfg.t_end_auto = false; cfg.t_end = detail::parse_double(value, field); }
            }
            else if (key == "n_samples") cfg.n_samples = int(detail::parse_int(value, field));
            else if (key == "gate_time") {
                cfg.gate_time_override = (value == "auto") ? 0.0 : detail::parse_double(value, field);
            }
            else if (key == "output") cfg.output = value;
            else if (key == "seed") cfg.seed = std::uint64_t(detail::parse_int(value, field));
            else if (key == "workers") cfg.workers = int(detail::parse_int(value, field));
            else throw config_error("unknown key '" + field + "'");
        } else if (section == "params") {
            if (key == "g1_mag") cfg.params.g1_mag = detail::parse_double(value, field);
            else if (key == "g2_mag") cfg.params.g2_mag = detail::parse_double(value, field);
            else if (key == "phi1") cfg.params.phi1 = detail::parse_double(value, field);
            else if (key == "phi2") cfg.params.phi2 = detail::parse_double(value, field);
            else if (key == "delta1") cfg.params.delta1 = detail::parse_double(value, field);
            else if (key == "delta2") {
                if (value == "auto") { cfg.delta2_auto = true; }
                else { cfg.delta2_auto = false; cfg.params.delta2 = detail::parse_double(value, field); }
            }
            else if (key == "kappa") cfg.params.kappa = detail::parse_double(value, field);
            else throw config_error("unknown key '" + field + "'");
        } else if (section == "sweep") {
            if (key == "scenario") cfg.sweep.scenario = parse_scenario_token(value);
            else if (key == "axis") cfg.sweep.axis = value;
            else if (key == "values") cfg.sweep.values = detail::parse_double_list(value, field);
            else throw config_error("unknown key '" + field + "'");
        } else {
            throw config_error("line " + std::to_string(lineno) + ": key outside any section");
        }
    }
    return cfg;
}

inline std::string serialize_config(const RunConfig& cfg) {
    std::string out;
    out += "[run]\n";
    out += "scenario = " + std::string(scenario_token(cfg.scenario)) + "\n";
    out += "model = " + std::string(report::model_token(cfg.model)) + "\n";
    out += "t_end = " + (cfg.t_end_auto ? std::string("auto") : report::format_g17(cfg.t_end)) + "\n";
    out += "n_samples = " + std::to_string(cfg.n_samples) + "\n";
    out += "gate_time = " + (cfg.gate_time_override == 0.0
                                 ? std::string("auto")
                                 : report::format_g17(cfg.gate_time_override)) + "\n";
    if (!cfg.output.empty()) out += "output = " + cfg.output + "\n";
    out += "seed = " + std::to_string(cfg.seed) + "\n";
    out += "workers = " + std::to_string(cfg.workers) + "\n";
    out += "\n[params]\n";
    out += "g1_mag = " + report::format_g17(cfg.params.g1_mag) + "\n";
    out += "g2_mag = " + report::format_g17(cfg.params.g2_mag) + "\n";
    out += "phi1 = " + report::format_g17(cfg.params.phi1) + "\n";
    out += "phi2 = " + report::format_g17(cfg.params.phi2) + "\n";
    out += "delta1 = " + report::format_g17(cfg.params.delta1) + "\n";
    out += "delta2 = " + (cfg.delta2_auto ? std::string("auto")
                                          : report::format_g17(cfg.params.delta2)) + "\n";
    out += "kappa = " + report::format_g17(cfg.params.kappa) + "\n";
    if (cfg.scenario == Scenario::sweep) {
        out += "\n[sweep]\n";
        out += "scenario = " + std::string(scenario_token(cfg.sweep.scenario)) + "\n";
        out += "axis = " + cfg.sweep.axis + "\n";
        std::string vals;
        for (std::size_t i = 0; i < cfg.sweep.values.size(); ++i) {
            if (i) vals += ", ";
            vals += report::format_g17(cfg.sweep.values[i]);
        }
        out += "values = " + vals + "\n";
    }
    return out;
}

} // namespace ramansim::cli
