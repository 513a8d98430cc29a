#pragma once

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "suites.hpp"

namespace dsym {

inline const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> n{"algebra", "flow", "spin", "planewave", "spectral", "verify-all"};
    return n;
}

struct RunConfig {
    std::string scenario = "verify-all";
    SuiteOptions options;
    std::string output_dir = "out";
    std::string summary_format = "json";  // json | csv
    // shift-symbol heat map
    double shift_t_max = 10.0;
    int shift_t_points = 41;
    double shift_xi1_min = -20.0;
    double shift_xi1_max = 20.0;
    int shift_xi1_points = 81;
    double shift_xi2 = 1.0;
    double shift_x1 = 0.0;
    double compton_R = 1e3;
    int compton_points = 181;
    int trace_samples = 201;
};

namespace detail {

template <class T>
void read_opt(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

inline void read_range(const nlohmann::json& j, const char* key, double& lo, double& hi) {
    if (!j.contains(key)) return;
    const auto& r = j.at(key);
    require(r.is_array() && r.size() == 2, std::string(key) + " must be [min, max]");
    lo = r[0].get<double>();
    hi = r[1].get<double>();
}

inline void read_cfg(const nlohmann::json& j, PlaneWaveConfig& c) {
    read_opt(j, "epsilon0", c.epsilon0);
    read_opt(j, "omega", c.omega);
}

}  // namespace detail

// throws ConfigError on schema or range violations
inline RunConfig parse_run_config(const nlohmann::json& j) {
    using detail::read_opt;
    using detail::require;
    RunConfig c;
    try {
        require(j.is_object(), "config must be a JSON object");
        read_opt(j, "scenario", c.scenario);
        read_opt(j, "output_dir", c.output_dir);
        read_opt(j, "summary_format", c.summary_format);
        auto& o = c.options;
        if (j.contains("seed")) {
            require(j.at("seed").is_number_integer() && j.at("seed").get<long long>() >= 0,
                    "seed must be a non-negative integer");
            o.seed = j.at("seed").get<std::uint64_t>();
        }
        read_opt(j, "tol_scale", o.tol_scale);

        if (j.contains("models")) {
            const auto& m = j.at("models");
            if (m.contains("coulomb")) {
                read_opt(m.at("coulomb"), "c_f", o.coulomb.cf);
                read_opt(m.at("coulomb"), "r0", o.coulomb.r0);
            }
            if (m.contains("strong_coulomb")) {
                read_opt(m.at("strong_coulomb"), "c_f", o.strong_coulomb.cf);
                read_opt(m.at("strong_coulomb"), "r0", o.strong_coulomb.r0);
            }
            if (m.contains("uniform_b")) {
                const auto& b = m.at("uniform_b").at("B");
                require(b.is_array() && b.size() == 3, "uniform_b.B must have 3 components");
                o.uniform_b.B = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>()};
            }
            if (m.contains("planewave")) detail::read_cfg(m.at("planewave"), o.planewave);
            if (m.contains("spectral")) detail::read_cfg(m.at("spectral"), o.spectral);
        }
        if (j.contains("grids")) {
            const auto& g = j.at("grids");
            read_opt(g, "algebra_points", o.algebra_points);
            read_opt(g, "flow_t", o.flow_t);
            read_opt(g, "flow_samples", o.flow_samples);
            read_opt(g, "inversion_points", o.inversion_points);
            read_opt(g, "theta_points", o.theta_points);
            read_opt(g, "kappa_t", o.kappa_t);
            read_opt(g, "kappa_orbits", o.kappa_orbits);
            read_opt(g, "factorization_grid", o.factorization_grid);
            read_opt(g, "factorization_triples", o.factorization_triples);
            detail::read_range(g, "d1_xi", o.d1_xi_min, o.d1_xi_max);
            read_opt(g, "d1_radii", o.d1_radii);
            detail::read_range(g, "proj_xi", o.proj_xi_min, o.proj_xi_max);
            read_opt(g, "proj_radii", o.proj_radii);
            read_opt(g, "shift_t_max", c.shift_t_max);
            read_opt(g, "shift_t_points", c.shift_t_points);
            detail::read_range(g, "shift_xi1", c.shift_xi1_min, c.shift_xi1_max);
            read_opt(g, "shift_xi1_points", c.shift_xi1_points);
            read_opt(g, "shift_xi2", c.shift_xi2);
            read_opt(g, "shift_x1", c.shift_x1);
            read_opt(g, "compton_R", c.compton_R);
            read_opt(g, "compton_points", c.compton_points);
            read_opt(g, "trace_samples", c.trace_samples);
        }
        if (j.contains("tolerances")) read_opt(j.at("tolerances"), "flow_tol", o.flow_tol);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config type error: ") + e.what());
    }

    const auto& o = c.options;
    bool known = false;
    for (const auto& n : scenario_names()) known = known || n == c.scenario;
    require(known, "unknown scenario '" + c.scenario + "'");
    require(c.summary_format == "json" || c.summary_format == "csv", "summary_format must be json or csv");
    require(o.tol_scale > 0.0, "tol_scale must be > 0");
    require(o.flow_tol > 0.0, "tolerances.flow_tol must be > 0");
    require(o.algebra_points > 0 && o.flow_samples >= 5 && o.inversion_points > 0 && o.theta_points > 0 &&
                o.kappa_orbits > 0 && o.factorization_triples > 0,
            "sample counts must be positive (flow_samples >= 5)");
    require(o.flow_t > 0.0 && o.kappa_t > 0.0, "flow_t and kappa_t must be > 0");
    require(o.factorization_grid >= 8 && (o.factorization_grid & (o.factorization_grid - 1)) == 0,
            "factorization_grid must be a power of two >= 8");
    require(o.d1_xi_min > 0.0 && o.d1_xi_max > o.d1_xi_min && o.d1_radii >= 2, "d1_xi grid is empty");
    require(o.proj_xi_min > 0.0 && o.proj_xi_max > o.proj_xi_min && o.proj_radii >= 2, "proj_xi grid is empty");
    require(o.planewave.omega > 0.0 && o.planewave.epsilon0 >= 0.0, "planewave needs omega > 0, epsilon0 >= 0");
    require(o.spectral.omega > 0.0 && o.spectral.epsilon0 >= 0.0, "spectral needs omega > 0, epsilon0 >= 0");
    require(o.coulomb.r0 > 0.0 && o.strong_coulomb.r0 > 0.0, "coulomb r0 must be > 0");
    require(c.shift_t_points > 0 && c.shift_xi1_points > 0 && c.shift_xi1_max > c.shift_xi1_min && c.shift_t_max > 0.0,
            "shift grid is empty");
    require(c.compton_points >= 2 && c.compton_R > 0.0 && c.trace_samples >= 2, "plot grids are empty");
    return c;
}

inline RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_run_config(j);
}

// ── report ──────────────────────────────────────────────────────────────────

struct Table {
    std::string kind;  // plot-data family: kappa, shift, compton, decay, trajectory, ...
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct Report {
    std::string scenario;
    std::vector<Suite> suites;
    std::map<std::string, Table> tables;  // file stem -> table

    bool passed() const {
        for (const auto& s : suites)
            if (!s.passed()) return false;
        return true;
    }
    bool empty() const { return suites.empty() && tables.empty(); }
};

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw IoError("cannot write '" + p.string() + "'");
    return f;
}

inline void write_table(const std::filesystem::path& p, const Table& t, char sep, bool header_comment) {
    auto f = open_out(p);
    if (header_comment) f << "# ";
    for (std::size_t i = 0; i < t.columns.size(); ++i) f << (i ? std::string(1, sep) : "") << t.columns[i];
    f << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) f << (i ? std::string(1, sep) : "") << format_number(r[i]);
        f << '\n';
    }
    if (!f) throw IoError("write failed for '" + p.string() + "'");
}

inline void ensure_dir(const std::filesystem::path& d) {
    std::error_code ec;
    std::filesystem::create_directories(d, ec);
    if (ec) throw IoError("cannot create '" + d.string() + "': " + ec.message());
}

}  // namespace detail

// ── scenario tables ─────────────────────────────────────────────────────────

inline Table algebra_table(const RunConfig& c) {
    Table t{"points", {"index", "model", "t", "x1", "x2", "x3", "xi1", "xi2", "xi3", "lambda_plus", "lambda_minus",
                       "upsilon_residual"}, {}};
    const auto& o = c.options;
    CounterRng rng(o.seed, 101);
    const std::array<PotentialModel, 3> models{PotentialModel{o.strong_coulomb}, PotentialModel{o.uniform_b},
                                               PotentialModel{PlaneWave{o.planewave.epsilon0, o.planewave.omega}}};
    for (int n = 0; n < 20; ++n) {
        const auto& m = models[static_cast<std::size_t>(n % 3)];
        const double tt = rng.uniform(0.0, 3.0);
        const Vec3 x = rng.normal3(), xi = rng.normal3(2.0);
        const auto l = eigen_lambda(m, tt, x, xi);
        const C4 U = diagonalizer_upsilon(m, tt, x, xi);
        const C4 h = symbol_h(standard_set(), m, tt, x, xi);
        const double res = max_abs(adjoint(U) * h * U -
                                   (scalar<4>(potential_V(m, tt, x)) + jbr(zeta_at(m, tt, x, xi)) * standard_set().beta));
        t.rows.push_back({double(n), double(m.index()), tt, x[0], x[1], x[2], xi[0], xi[1], xi[2], l.plus, l.minus, res});
    }
    return t;
}

inline Table trajectory_table(const RunConfig& c) {
    const PotentialModel m = c.options.coulomb;
    const auto tr = integrate_flow(+1, m, {{2.0, 0.0, 0.0}, {0.0, 0.3, 0.0}}, c.options.flow_t, c.options.flow_tol,
                                   static_cast<std::size_t>(c.trace_samples));
    Table t{"trajectory", {"t", "x1", "x2", "x3", "xi1", "xi2", "xi3", "lambda"}, {}};
    for (std::size_t i = 0; i < tr.samples.size(); ++i) {
        const auto& p = tr.samples[i];
        t.rows.push_back({tr.t[i], p.x[0], p.x[1], p.x[2], p.xi[0], p.xi[1], p.xi[2],
                          lambda_sign(+1, m, tr.t[i], p.x, p.xi)});
    }
    return t;
}

inline Table kappa_table(const RunConfig& c) {
    const PotentialModel m = c.options.strong_coulomb;
    const auto tr = integrate_kappa_trace(+1, m, {{1.0, 0.0, 0.0}, {0.0, 0.6, 0.1}}, {{0.0, 0.0, 1.0}, 0.0},
                                          c.options.kappa_t, 1e-10, static_cast<std::size_t>(c.trace_samples));
    Table t{"kappa", {"t", "kappa1", "kappa2", "kappa3", "kappa_norm"}, {}};
    for (const auto& s : tr.samples) t.rows.push_back({s.t, s.kappa[0], s.kappa[1], s.kappa[2], norm(s.kappa)});
    return t;
}

// electron/positron coefficients of the shift symbol over a (t, xi1) grid
inline Table shift_table(const RunConfig& c) {
    Table t{"shift", {"t", "x1", "xi1", "xi2", "xi3", "electron", "positron"}, {}};
    const auto ts = linspace(0.0, c.shift_t_max, static_cast<std::size_t>(c.shift_t_points));
    const auto xs = linspace(c.shift_xi1_min, c.shift_xi1_max, static_cast<std::size_t>(c.shift_xi1_points));
    for (double tt : ts)
        for (double x1i : xs) {
            const Vec3 xi{x1i, c.shift_xi2, 0.0};
            const C4 s = shift_symbol(c.options.planewave, tt, c.shift_x1, xi);
            const double e = 0.5 * trace(s * p_free(+1, xi)).real();
            const double p = 0.5 * trace(s * p_free(-1, xi)).real();
            t.rows.push_back({tt, c.shift_x1, xi[0], xi[1], xi[2], e, p});
        }
    return t;
}

inline Table compton_table(const RunConfig& c) {
    Table t{"compton", {"lambda", "two_theta", "one_minus_cos"}, {}};
    for (double lam : linspace(0.0, std::numbers::pi, static_cast<std::size_t>(c.compton_points))) {
        const Vec3 xi{c.compton_R * std::cos(lam), c.compton_R * std::sin(lam), 0.0};
        const auto cs = compton_speed(xi);
        t.rows.push_back({lam, cs.two_theta, cs.one_minus_cos});
    }
    return t;
}

inline Table d1_decay_table(const RunConfig& c) {
    const auto& o = c.options;
    const auto d = d1_residual_decay(o.planewave, detail::logspace(o.d1_xi_min, o.d1_xi_max, o.d1_radii));
    Table t{"decay", {"radius", "weighted_residual"}, {}};
    for (std::size_t i = 0; i < d.radii.size(); ++i) t.rows.push_back({d.radii[i], d.weighted[i]});
    return t;
}

inline Table proj_decay_table(const RunConfig& c) {
    const auto& o = c.options;
    Table t{"decay", {"sign", "direction", "radius", "weighted_difference"}, {}};
    const std::vector<std::pair<double, double>> xy{{0.3, -1.2}, {2.0, 1.1}, {-3.0, 0.5}};
    for (int sg : {+1, -1})
        for (std::size_t k = 0; k < proj_directions().size(); ++k) {
            const auto d = proj_decay(sg, o, proj_directions()[k], xy);
            for (std::size_t i = 0; i < d.radii.size(); ++i)
                t.rows.push_back({double(sg), double(k), d.radii[i], d.weighted[i]});
        }
    return t;
}

inline Table block_table(const RunConfig& c) {
    Table t{"blocks", {"sign", "x1", "y1", "xi1", "p11", "p12_abs", "p21_abs", "p22_abs"}, {}};
    const TransverseParams prm{0.4, -0.3, c.options.spectral};
    for (int sg : {+1, -1})
        for (double x1 : {-1.0, 0.0, 1.5})
            for (double y1 : {-0.5, 0.0, 2.0})
                for (double xi1 : {-10.0, -1.0, 0.0, 1.0, 10.0}) {
                    const auto b = proj_block_symbols(sg, prm, x1, y1, xi1);
                    t.rows.push_back({double(sg), x1, y1, xi1, b.b11(0, 0).real(), max_abs(b.b12), max_abs(b.b21),
                                      max_abs(b.b22)});
                }
    return t;
}

// ── run / emit ──────────────────────────────────────────────────────────────

inline Report run_scenario(const RunConfig& c) {
    Report r;
    r.scenario = c.scenario;
    const auto& o = c.options;
    const bool all = c.scenario == "verify-all";
    if (all || c.scenario == "algebra") {
        r.suites.push_back(algebra_suite(o));
        r.tables["algebra_points"] = algebra_table(c);
    }
    if (all || c.scenario == "flow") {
        r.suites.push_back(flow_suite(o));
        r.tables["trajectory"] = trajectory_table(c);
    }
    if (all || c.scenario == "spin") {
        r.suites.push_back(theta_suite(o));
        r.suites.push_back(kappa_suite(o));
        r.suites.push_back(spin_suite(o));
        r.tables["kappa_trace"] = kappa_table(c);
    }
    if (all || c.scenario == "planewave") {
        r.suites.push_back(factorization_suite(o));
        r.suites.push_back(gamma_suite(o));
        r.suites.push_back(d1_suite(o));
        r.suites.push_back(ladder_suite(o));
        r.tables["shift_symbol"] = shift_table(c);
        r.tables["compton"] = compton_table(c);
        r.tables["d1_residual_decay"] = d1_decay_table(c);
    }
    if (all || c.scenario == "spectral") {
        r.suites.push_back(spectral_suite(o));
        r.tables["projection_decay"] = proj_decay_table(c);
        r.tables["projection_blocks"] = block_table(c);
    }
    return r;
}

// CSV tables plus summary; returns written paths
inline std::vector<std::filesystem::path> write_report(const Report& r, const std::filesystem::path& dir,
                                                       const std::string& summary_format) {
    std::vector<std::filesystem::path> out;
    detail::ensure_dir(dir);
    for (const auto& [stem, t] : r.tables) {
        out.push_back(dir / (stem + ".csv"));
        detail::write_table(out.back(), t, ',', false);
    }
    {
        out.push_back(dir / "summary.csv");
        auto f = detail::open_out(out.back());
        f << "suite,check,value,bound,pass\n";
        for (const auto& s : r.suites)
            for (const auto& c : s.checks)
                f << s.name << ',' << c.name << ',' << format_number(c.value) << ',' << format_number(c.bound) << ','
                  << (c.pass ? "PASS" : "FAIL") << '\n';
    }
    if (summary_format == "json") {
        nlohmann::json j;
        j["scenario"] = r.scenario;
        j["passed"] = r.passed();
        j["suites"] = nlohmann::json::array();
        for (const auto& s : r.suites) {
            nlohmann::json js{{"name", s.name}, {"passed", s.passed()}, {"seconds", s.seconds}};
            js["checks"] = nlohmann::json::array();
            for (const auto& c : s.checks)
                js["checks"].push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"pass", c.pass}});
            j["suites"].push_back(js);
        }
        out.push_back(dir / "summary.json");
        auto f = detail::open_out(out.back());
        f << j.dump(2) << '\n';
    }
    return out;
}

// whitespace-delimited plot data for tables of the given kind ("all" for every table)
inline std::vector<std::filesystem::path> emit_plotdata(const Report& r, const std::string& kind,
                                                        const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> out;
    bool dir_ready = false;
    for (const auto& [stem, t] : r.tables) {
        if (kind != "all" && t.kind != kind) continue;
        if (!dir_ready) {
            detail::ensure_dir(dir);
            dir_ready = true;
        }
        out.push_back(dir / (stem + ".dat"));
        detail::write_table(out.back(), t, ' ', true);
    }
    return out;
}

}  // namespace dsym
