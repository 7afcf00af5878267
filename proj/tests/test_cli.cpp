#include <catch2/catch_amalgamated.hpp>

#include "ramansim/scenarios.hpp"
#include "ramansim/selfcheck.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"

using namespace ramansim;
using namespace ramansim::cli;
using test_helpers::cdist;

namespace {

namespace fs = std::filesystem;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("ramansim_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string sub(const std::string& name) const { return (path / name).string(); }
};

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("config: parse, serialize, round-trip") {
    const std::string text = R"(# phase-gate run
[run]
scenario = qpg
model = analytic
t_end = auto
n_samples = 400
seed = 7
workers = 2

[params]
g1_mag = 1
g2_mag = 1
phi1 = 0
phi2 = 0
delta1 = 10
delta2 = auto
kappa = 0.01
)";
    const RunConfig cfg = parse_config_text(text);
    CHECK(cfg.scenario == Scenario::qpg);
    CHECK(cfg.model == gates::GateModel::analytic);
    CHECK(cfg.delta2_auto);
    CHECK(cfg.params.kappa == 0.01);
    CHECK(cfg.seed == 7);
    CHECK(cfg.workers == 2);

    const RunConfig again = parse_config_text(serialize_config(cfg));
    CHECK(again == cfg);

    // a sweep config round-trips including the sweep section
    RunConfig sw = cfg;
    sw.scenario = Scenario::sweep;
    sw.sweep.scenario = Scenario::swap_phase;
    sw.sweep.axis = "phi";
    sw.sweep.values = {0.0, M_PI / 2.0, M_PI};
    const RunConfig sw2 = parse_config_text(serialize_config(sw));
    CHECK(sw2 == sw);
}

TEST_CASE("config: errors carry the field path") {
    CHECK_THROWS_MATCHES(parse_config_text("[run]\nscenario = bogus\n"), config_error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("bogus")));
    CHECK_THROWS_MATCHES(parse_config_text("[params]\ndelta1 = ten\n"), config_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("params.delta1")));
    CHECK_THROWS_MATCHES(parse_config_text("[run]\nbogus_key = 1\n"), config_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("run.bogus_key")));
    CHECK_THROWS_AS(parse_config_text("key_without_section = 1\n"), config_error);

    RunConfig bad;
    bad.n_samples = 1;
    CHECK_THROWS_AS(bad.validate(), config_error);
    RunConfig badsweep;
    badsweep.scenario = Scenario::sweep;
    badsweep.sweep.axis = "not_a_field";
    badsweep.sweep.values = {1.0};
    CHECK_THROWS_AS(badsweep.validate(), config_error);
}

TEST_CASE("trajectory csv: shape, populations, determinism") {
    TempDir dir("csv");
    SystemParams p;
    p.delta1 = 10.0;
    p.delta2 = gates::qpg_detuning_for(10.0);
    Eigen::VectorXcd d0(3);
    d0 << 0, 0, 1;
    const auto traj = dynamics::evolve_ode(dynamics::RhsKind::full_manifold, p, {1, 0}, d0,
                                           dynamics::uniform_grid(0.0, 22.0, 400), 1e-11, 1e-13);
    const std::string path = dir.sub("traj.csv");
    report::emit_trajectory_csv(traj, path);
    const std::string text = slurp(path);
    CHECK(count_lines(text) == 401);   // header + 400 samples
    CHECK(text.rfind("t,re:g_1_0,im:g_1_0,p:g_1_0,re:e_0_0", 0) == 0);

    // populations within [0,1], row sums <= 1 + 1e-9
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::stringstream row(line);
        std::string cell;
        std::vector<double> cells;
        while (std::getline(row, cell, ',')) cells.push_back(std::stod(cell));
        REQUIRE(cells.size() == 10);
        const double psum = cells[3] + cells[6] + cells[9];
        CHECK(psum <= 1.0 + 1e-9);
        for (int k : {3, 6, 9}) {
            CHECK(cells[k] >= 0.0);
            CHECK(cells[k] <= 1.0 + 1e-12);
        }
    }

    const std::string path2 = dir.sub("traj2.csv");
    report::emit_trajectory_csv(traj, path2);
    CHECK(slurp(path2) == text);
}

TEST_CASE("qpg scenario: files, feasibility line, determinism") {
    TempDir dir("qpg");
    RunConfig cfg;
    cfg.scenario = Scenario::qpg;
    cfg.model = gates::GateModel::analytic;
    cfg.delta2_auto = true;
    cfg.params.delta1 = 10.0;
    cfg.params.kappa = 0.01;
    cfg.output = dir.sub("a");

    const auto res = run_scenario(cfg);
    CHECK(res.summary.find("feasible: value=0.2221") != std::string::npos);
    REQUIRE(res.files.size() == 3);
    for (const auto& f : res.files) CHECK(fs::exists(f));

    // report fields per the schema, with the phase flip on |1_b,f>
    const auto rep = nlohmann::json::parse(slurp(res.files[0]));
    CHECK(rep.at("kind") == "qpg_photon_atom");
    CHECK(rep.at("model") == "analytic");
    CHECK(rep.at("params").at("delta2") == Catch::Approx(9.8));
    CHECK(rep.at("gate_time") == Catch::Approx(22.2144146907918));
    CHECK(rep.at("fidelity") == Catch::Approx(1.0));
    CHECK(rep.at("feasibility").at("feasible") == true);
    const auto& col = rep.at("truth_table").at(3);   // input |1_b,f>
    CHECK(col.at(3).at("re") == Catch::Approx(-1.0));
    CHECK(std::abs(col.at(3).at("im").get<double>()) < 1e-10);

    // byte-identical rerun
    RunConfig cfg2 = cfg;
    cfg2.output = dir.sub("b");
    const auto res2 = run_scenario(cfg2);
    REQUIRE(res2.files.size() == res.files.size());
    for (std::size_t i = 0; i < res.files.size(); ++i)
        CHECK(slurp(res.files[i]) == slurp(res2.files[i]));
}

TEST_CASE("swap-phase sweep: three reports with the printed phases") {
    TempDir dir("sweep");
    RunConfig cfg;
    cfg.scenario = Scenario::sweep;
    cfg.model = gates::GateModel::effective_stark;
    cfg.params.delta1 = 10.0;
    cfg.params.delta2 = 10.0;
    cfg.output = dir.sub("out");
    cfg.workers = 2;
    cfg.sweep.scenario = Scenario::swap_phase;
    cfg.sweep.axis = "phi";
    cfg.sweep.values = {0.0, M_PI / 2.0, M_PI};

    const auto res = run_scenario(cfg);
    for (int k = 0; k < 3; ++k) {
        char name[64];
        std::snprintf(name, sizeof name, "out/point_%03d/report.json", k);
        const auto rep = nlohmann::json::parse(slurp(dir.sub(name)));
        const auto& entry = rep.at("truth_table").at(1).at(2);   // |g>|e_R> -> |f>|g_R>
        const Complex got(entry.at("re").get<double>(), entry.at("im").get<double>());
        INFO("phi index " << k);
        CHECK(cdist(got, -std::exp(Complex(0, 1) * cfg.sweep.values[k])) < 1e-12);
    }
    CHECK(res.summary.find("error") == std::string::npos);
}

TEST_CASE("adiabatic-check scenario emits strictly decreasing rows") {
    TempDir dir("adb");
    RunConfig cfg;
    cfg.scenario = Scenario::adiabatic_check;
    cfg.n_samples = 200;
    cfg.output = dir.sub("out");
    const auto res = run_scenario(cfg);
    CHECK(res.summary.find("strictly decreasing: yes") != std::string::npos);

    const std::string csv = slurp(dir.sub("out/adiabatic.csv"));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "delta1,infidelity");
    std::vector<double> vals;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        vals.push_back(std::stod(line.substr(comma + 1)));
    }
    REQUIRE(vals.size() == 3);
    CHECK(vals[0] > vals[1]);
    CHECK(vals[1] > vals[2]);
}

TEST_CASE("decay-check scenario reports survival against the bound") {
    TempDir dir("decay");
    RunConfig cfg;
    cfg.scenario = Scenario::decay_check;
    cfg.delta2_auto = true;
    cfg.params.delta1 = 10.0;
    cfg.params.kappa = 0.01;
    cfg.n_samples = 100;
    cfg.output = dir.sub("out");
    const auto res = run_scenario(cfg);
    CHECK(res.summary.find("feasible: value=0.2221") != std::string::npos);

    // survival at T within 0.05 of e^{-kappa T} = 0.8008
    const auto pos = res.summary.find("survival(t_end)=");
    REQUIRE(pos != std::string::npos);
    const double surv = std::stod(res.summary.substr(pos + 16));
    CHECK(std::abs(surv - 0.8008) < 0.05);
}

TEST_CASE("no-stark-compare: clean gate beside the broken one") {
    TempDir dir("nostark");
    RunConfig cfg;
    cfg.scenario = Scenario::no_stark_compare;
    cfg.params.delta1 = 10.0;
    cfg.params.delta2 = 10.0;
    cfg.n_samples = 50;
    cfg.output = dir.sub("out");
    const auto res = run_scenario(cfg);
    (void)res;

    const auto clean = nlohmann::json::parse(slurp(dir.sub("out/report_nostark.json")));
    CHECK(clean.at("fidelity").get<double>() >= 1.0 - 1e-10);
    const auto stark = nlohmann::json::parse(slurp(dir.sub("out/report_stark.json")));
    CHECK(stark.at("fidelity").get<double>() == Catch::Approx(0.5).margin(1e-9));
}

TEST_CASE("selfcheck battery passes with any seed") {
    for (std::uint64_t seed : {1ull, 99ull}) {
        const auto results = run_selfcheck(seed);
        CHECK(results.size() >= 15);
        for (const auto& r : results) {
            INFO(r.name << ": " << r.detail);
            CHECK(r.ok);
        }
    }
}
