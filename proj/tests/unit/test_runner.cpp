#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <diracsym/diracsym.hpp>

using namespace dsym;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("diracsym_runner_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("default config is valid") {
    const auto c = parse_run_config(nlohmann::json::object());
    CHECK(c.scenario == "verify-all");
    CHECK(c.options.seed == SuiteOptions{}.seed);
}

TEST_CASE("config overrides are read") {
    const auto j = nlohmann::json::parse(R"({
        "scenario": "planewave", "seed": 7, "tol_scale": 2.0,
        "models": {"planewave": {"epsilon0": 0.2, "omega": 1.0}, "uniform_b": {"B": [1, 2, 3]}},
        "grids": {"d1_xi": [4, 100], "shift_xi1_points": 11},
        "tolerances": {"flow_tol": 1e-9}})");
    const auto c = parse_run_config(j);
    CHECK(c.scenario == "planewave");
    CHECK(c.options.seed == 7);
    CHECK(c.options.tol_scale == 2.0);
    CHECK(c.options.planewave.epsilon0 == 0.2);
    CHECK(c.options.uniform_b.B == Vec3{1, 2, 3});
    CHECK(c.options.d1_xi_min == 4.0);
    CHECK(c.shift_xi1_points == 11);
    CHECK(c.options.flow_tol == 1e-9);
}

TEST_CASE("malformed configs are rejected") {
    using nlohmann::json;
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"tolerances": {"flow_tol": -1e-9}})")), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"tol_scale": 0})")), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"scenario": "nope"})")), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"seed": "abc"})")), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"grids": {"d1_xi": [5, 5]}})")), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"grids": {"factorization_grid": 100}})")), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"models": {"uniform_b": {"B": [1, 2]}}})")), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::parse("[1, 2]")), ConfigError);
    CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), IoError);
}

TEST_CASE("algebra scenario passes and writes tables") {
    auto c = parse_run_config(nlohmann::json{{"scenario", "algebra"}});
    const auto r = run_scenario(c);
    REQUIRE(r.suites.size() == 1);
    CHECK(r.passed());
    const auto dir = scratch("algebra");
    const auto files = write_report(r, dir, "json");
    CHECK(fs::exists(dir / "summary.csv"));
    CHECK(fs::exists(dir / "summary.json"));
    CHECK(fs::exists(dir / "algebra_points.csv"));
    const auto summary = slurp(dir / "summary.csv");
    CHECK(summary.rfind("suite,check,value,bound,pass\n", 0) == 0);
    CHECK(summary.find('\r') == std::string::npos);
    const auto j = nlohmann::json::parse(slurp(dir / "summary.json"));
    CHECK(j["passed"].get<bool>());
    fs::remove_all(dir);
}

TEST_CASE("planewave scenario emits the shift symbol grid") {
    auto c = parse_run_config(nlohmann::json::parse(R"({"scenario": "planewave",
        "models": {"planewave": {"epsilon0": 0.2, "omega": 1.0}},
        "grids": {"shift_t_points": 5, "shift_xi1_points": 9}})"));
    const auto r = run_scenario(c);
    CHECK(r.passed());
    const auto& t = r.tables.at("shift_symbol");
    CHECK(t.rows.size() == 45);
    const auto dir = scratch("pw");
    write_report(r, dir, "csv");
    CHECK(fs::exists(dir / "shift_symbol.csv"));
    CHECK_FALSE(fs::exists(dir / "summary.json"));
    bool gamma_ok = false;
    for (const auto& s : r.suites)
        for (const auto& k : s.checks)
            if (k.name == "gamma_closed_vs_quadrature") gamma_ok = k.pass;
    CHECK(gamma_ok);
    fs::remove_all(dir);
}

TEST_CASE("plot data") {
    RunConfig c;
    c.scenario = "planewave";
    Report r;
    r.scenario = "planewave";
    r.tables["compton"] = compton_table(c);
    r.tables["kappa_trace"] = kappa_table(c);
    const auto dir = scratch("plot");
    const auto files = emit_plotdata(r, "compton", dir);
    REQUIRE(files.size() == 1);
    const auto text = slurp(files[0]);
    CHECK(text.rfind("# lambda two_theta one_minus_cos\n", 0) == 0);
    const auto& last = r.tables["compton"].rows.back();
    CHECK(last[0] == Catch::Approx(std::numbers::pi));
    CHECK(last[2] == Catch::Approx(2.0));
    CHECK(r.tables["kappa_trace"].columns == std::vector<std::string>{"t", "kappa1", "kappa2", "kappa3", "kappa_norm"});

    const auto empty_dir = scratch("empty");
    CHECK(emit_plotdata(Report{}, "all", empty_dir).empty());
    CHECK_FALSE(fs::exists(empty_dir));
    CHECK_THROWS_AS(emit_plotdata(r, "all", "/proc/diracsym_forbidden"), IoError);
    fs::remove_all(dir);
}

TEST_CASE("number formatting round trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(format_number(v)) == v);
}
