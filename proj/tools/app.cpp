#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <diracsym/diracsym.hpp>

namespace {

void print_report(const dsym::Report& r) {
    for (const auto& s : r.suites) {
        std::cout << "[" << (s.passed() ? "PASS" : "FAIL") << "] " << s.name << "  (" << s.seconds << " s)\n";
        for (const auto& c : s.checks)
            if (!c.pass)
                std::cout << "    " << c.name << ": " << dsym::format_number(c.value) << " > "
                          << dsym::format_number(c.bound) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirac symbol verification runner"};
    std::string scenario, config_path, out_dir, plot_kind;
    long long seed = -1;
    double tol_scale = 0.0;
    app.add_option("scenario", scenario, "algebra | flow | spin | planewave | spectral | verify-all")->required();
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--seed", seed, "RNG seed (overrides config)");
    app.add_option("--tol-scale", tol_scale, "multiplies every check bound");
    app.add_option("--plot", plot_kind, "also write .dat plot data (kind or 'all')");
    CLI11_PARSE(app, argc, argv);

    try {
        nlohmann::json j = nlohmann::json::object();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw dsym::IoError("cannot open config '" + config_path + "'");
            try {
                in >> j;
            } catch (const nlohmann::json::parse_error& e) {
                throw dsym::ConfigError(std::string("config parse error: ") + e.what());
            }
            if (!j.is_object()) throw dsym::ConfigError("config must be a JSON object");
        }
        j["scenario"] = scenario;
        if (!out_dir.empty()) j["output_dir"] = out_dir;
        if (seed >= 0) j["seed"] = seed;
        if (app.count("--seed") && seed < 0) throw dsym::ConfigError("seed must be non-negative");
        if (app.count("--tol-scale")) j["tol_scale"] = tol_scale;

        const auto cfg = dsym::parse_run_config(j);
        const auto report = dsym::run_scenario(cfg);
        const auto files = dsym::write_report(report, cfg.output_dir, cfg.summary_format);
        if (!plot_kind.empty()) dsym::emit_plotdata(report, plot_kind, std::filesystem::path(cfg.output_dir) / "plot");
        print_report(report);
        std::cout << files.size() << " files written to " << cfg.output_dir << "\n";
        return report.passed() ? 0 : 1;
    } catch (const dsym::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const dsym::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const dsym::DiracError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
