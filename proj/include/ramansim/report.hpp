// report.hpp — Deterministic serialization: GateReport to JSON, Trajectory to
// CSV. Byte-identical output for identical inputs is part of the contract.

#pragma once

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include "ramansim/dynamics.hpp"
#include "ramansim/errors.hpp"
#include "ramansim/gates.hpp"

namespace ramansim::report {

using json = nlohmann::ordered_json;

// CLI-facing model tokens, also used in config files and JSON
inline const char* model_token(gates::GateModel m) {
    switch (m) {
        case gates::GateModel::full: return "full";
        case gates::GateModel::effective_stark: return "eff";
        case gates::GateModel::effective_no_stark: return "eff-nostark";
        case gates::GateModel::analytic: return "analytic";
    }
    return "?";
}

inline gates::GateModel parse_model_token(const std::string& s) {
    if (s == "full") return gates::GateModel::full;
    if (s == "eff") return gates::GateModel::effective_stark;
    if (s == "eff-nostark") return gates::GateModel::effective_no_stark;
    if (s == "analytic") return gates::GateModel::analytic;
    throw config_error("unknown model '" + s + "' (expected full|eff|eff-nostark|analytic)");
}

inline json params_to_json(const models::SystemParams& p) {
    return json{{"g1_mag", p.g1_mag}, {"g2_mag", p.g2_mag}, {"phi1", p.phi1},
                {"phi2", p.phi2},     {"delta1", p.delta1}, {"delta2", p.delta2},
                {"kappa", p.kappa}};
}

// Schema: {"kind","model","params",{...},"gate_time","truth_table":
// [[{"re","im"} x4] x4],"fidelity","leakage","feasibility":{"value","feasible"}}
// truth_table is input-major: entry [j][i] is the output amplitude on basis
// state i for input state j.
inline json gate_report_to_json(const gates::GateReport& rep) {
    json table = json::array();
    for (int j = 0; j < 4; ++j) {
        json column = json::array();
        for (int i = 0; i < 4; ++i)
            column.push_back(json{{"re", rep.truth_table(i, j).real()},
                                  {"im", rep.truth_table(i, j).imag()}});
        table.push_back(std::move(column));
    }
    return json{{"kind", gates::kind_name(rep.kind)},
                {"model", model_token(rep.model)},
                {"params", params_to_json(rep.params)},
                {"gate_time", rep.gate_time},
                {"truth_table", std::move(table)},
                {"fidelity", rep.fidelity},
                {"leakage", rep.leakage},
                {"feasibility",
                 json{{"value", rep.feasibility.value}, {"feasible", rep.feasibility.feasible}}}};
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw config_error("write failed for '" + path + "'");
}

inline void write_gate_report(const gates::GateReport& rep, const std::string& path) {
    write_text_file(path, gate_report_to_json(rep).dump(2) + "\n");
}

inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Header row, then one row per sample: t, then re/im/|amp|^2 per tracked
// component. 17 significant digits, comma separators, LF endings.
inline void emit_trajectory_csv(const dynamics::Trajectory& traj, const std::string& path) {
    if (traj.times.empty()) throw contract_error("emit_trajectory_csv: empty trajectory");
    if (traj.labels.size() != static_cast<std::size_t>(traj.states.front().size()))
        throw contract_error("emit_trajectory_csv: label/component count mismatch");

    std::string out = "t";
    for (const auto& label : traj.labels)
        out += ",re:" + label + ",im:" + label + ",p:" + label;
    out += "\n";
    for (std::size_t row = 0; row < traj.times.size(); ++row) {
        out += format_g17(traj.times[row]);
        const auto& s = traj.states[row];
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            out += "," + format_g17(s(i).real());
            out += "," + format_g17(s(i).imag());
            out += "," + format_g17(std::norm(s(i)));
        }
        out += "\n";
    }
    write_text_file(path, out);
}

} // namespace ramansim::report
