// Command-line front end: moment tables, dispersion curves, jump reports,
// figure datasets and the discrete-ordinates cross-check.
//
// Exit codes: 0 success, 2 usage error, 3 numerical non-convergence.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kapitsa/bose_moments.hpp"
#include "kapitsa/dispersion.hpp"
#include "kapitsa/errors.hpp"
#include "kapitsa/halfspace.hpp"
#include "kapitsa/jump_solver.hpp"
#include "kapitsa/parallel.hpp"
#include "kapitsa/params.hpp"

using nlohmann::json;
using namespace kapitsa;

namespace {

struct Options {
    double gamma = 3.0;
    double q = 0.0;
    int orders = 1;
    double kmin = 1e-4, kmax = 1e3;
    int knodes = 400;
    double slab_L = 20.0;
    int mu_nodes = 16;
    int c_nodes = 24;
    std::string phys;   // "T_s=..,u0=..,s=.."
    std::string out;    // output path; empty = stdout
    std::string format; // csv | json; empty = per-command default
    bool validate = false;
};

std::string fmt9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out);
    if (!f) throw std::runtime_error("cannot open output file: " + opt.out);
    f << text;
}

PhysicalParams parse_phys(const std::string& spec) {
    PhysicalParams p;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::domain_error("--phys expects key=value pairs: " + item);
        const std::string key = item.substr(0, eq);
        const double val = std::stod(item.substr(eq + 1));
        if (key == "T_s") p.T_s = val;
        else if (key == "u0") p.u0 = val;
        else if (key == "s") p.s = val;
        else if (key == "a") p.a = val;
        else if (key == "n") p.n_conc = val;
        else if (key == "m") p.m_mass = val;
        else throw std::domain_error("--phys: unknown key " + key);
    }
    p.validate();
    return p;
}

// Flat key=value config; flags given on the command line take precedence,
// which the caller arranges by applying the file before parsing flags.
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::domain_error("cannot read config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

void apply_config(Options& o, const std::map<std::string, std::string>& kv) {
    for (const auto& [k, v] : kv) {
        if (k == "gamma") o.gamma = std::stod(v);
        else if (k == "q") o.q = std::stod(v);
        else if (k == "orders") o.orders = std::stoi(v);
        else if (k == "kmin") o.kmin = std::stod(v);
        else if (k == "kmax") o.kmax = std::stod(v);
        else if (k == "knodes") o.knodes = std::stoi(v);
        else if (k == "slab-L") o.slab_L = std::stod(v);
        else if (k == "mu-nodes") o.mu_nodes = std::stoi(v);
        else if (k == "c-nodes") o.c_nodes = std::stoi(v);
        else if (k == "phys") o.phys = v;
        else if (k == "out") o.out = v;
        else if (k == "format") o.format = v;
        else throw std::domain_error("config: unknown key " + k);
    }
}

// Tabular emitters: CSV (one-line header, 9 significant digits) or a JSON
// array of row objects.
void emit_table(const Options& opt, const std::vector<std::string>& cols,
                const std::vector<std::vector<double>>& rows) {
    if (opt.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            json o;
            for (std::size_t c = 0; c < cols.size(); ++c) o[cols[c]] = r[c];
            arr.push_back(o);
        }
        emit(opt, arr.dump(2) + "\n");
        return;
    }
    std::ostringstream os;
    for (std::size_t c = 0; c < cols.size(); ++c)
        os << (c ? "," : "") << cols[c];
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < r.size(); ++c)
            os << (c ? "," : "") << fmt9(r[c]);
        os << '\n';
    }
    emit(opt, os.str());
}

HalfspaceGrid make_grid(const Options& o) {
    HalfspaceGrid g;
    g.L = o.slab_L;
    g.mu_half = o.mu_nodes;
    g.c_nodes = o.c_nodes;
    return g;
}

int cmd_moments(const Options& opt) {
    std::set<double> orders;
    for (int n = 2; n <= 12; ++n) orders.insert(static_cast<double>(n));
    for (double extra : {opt.gamma + 3.0, opt.gamma + 4.0, 2.0 * opt.gamma + 3.0,
                         2.0 * opt.gamma + 4.0, 3.0 * opt.gamma + 3.0,
                         3.0 * opt.gamma + 4.0})
        orders.insert(extra);
    std::vector<std::vector<double>> rows;
    for (double n : orders) rows.push_back({n, moment(n)});
    emit_table(opt, {"n", "g_n"}, rows);
    return 0;
}

int cmd_dispersion(const Options& opt) {
    ModelParams mp{opt.gamma, opt.q};
    mp.validate();
    const KGrid grid = KGrid::logarithmic(opt.kmin, opt.kmax, opt.knodes);
    std::vector<double> om(grid.nodes.size());
    parallel_for(grid.nodes.size(),
                 [&](std::size_t i) { om[i] = omega(grid.nodes[i], mp); });
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        const double k = grid.nodes[i];
        rows.push_back({k, om[i], k * k * om[i]});
    }
    emit_table(opt, {"k", "omega", "lambda"}, rows);
    return 0;
}

int cmd_figure1(const Options& opt) {
    const std::vector<double> qs{0.3, 0.5, 0.8};
    std::vector<double> gammas;
    for (int i = 0; i <= 50; ++i) gammas.push_back(3.0 + 0.1 * i);
    std::vector<std::vector<double>> rows;
    for (double q : qs)
        for (double g : gammas) rows.push_back({g, q, jump_coefficient({g, q})});
    emit_table(opt, {"gamma", "q", "C"}, rows);
    return 0;
}

int cmd_figure2(const Options& opt) {
    const std::vector<double> gammas{3.0, 4.0, 5.0};
    std::vector<std::vector<double>> rows;
    for (double g : gammas)
        for (int i = 0; i <= 95; ++i) {
            const double q = 0.01 * i;
            rows.push_back({q, g, jump_coefficient({g, q})});
        }
    emit_table(opt, {"q", "gamma", "C"}, rows);
    return 0;
}

json jump_report_json(const Options& opt, const JumpReport& rep, bool has_phys) {
    json j;
    j["schema_version"] = 1;
    j["gamma"] = opt.gamma;
    j["q"] = opt.q;
    j["orders"] = rep.orders_used;
    j["epsilon_terms"] = rep.epsilon_terms;
    j["epsilon_T"] = rep.epsilon_T;
    j["C"] = rep.C_coeff;
    if (has_phys)
        j["R_SI"] = rep.R;
    else
        j["R_SI"] = nullptr;
    j["validator"] = nullptr;
    j["warnings"] = rep.warnings;
    j["origin_growth_exponents"] = rep.diagnostics;
    return j;
}

int cmd_jump(const Options& opt) {
    if (opt.format == "csv")
        throw std::domain_error("jump reports are JSON only");
    ModelParams mp{opt.gamma, opt.q};
    mp.validate();
    SeriesOptions sopt;
    sopt.grid = KGrid::logarithmic(opt.kmin, opt.kmax, opt.knodes);
    JumpReport rep = epsilon_T(mp, opt.orders, 1.0, sopt);
    const bool has_phys = !opt.phys.empty();
    if (has_phys) {
        const PhysicalParams phys = parse_phys(opt.phys);
        rep.R = kapitsa_resistance(mp, phys);
        for (const auto& w : phys.warnings()) rep.warnings.push_back(w);
    }
    json j = jump_report_json(opt, rep, has_phys);
    int rc = 0;
    if (opt.validate) {
        try {
            const HalfspaceGrid grid = make_grid(opt);
            const HalfspaceField f = solve_halfspace(mp, 1.0, grid);
            const double num = extract_temperature_jump(f, 1.0);
            j["validator"] = {
                {"epsilon_T", num},
                {"deviation_vs_analytic", num / rep.epsilon_T - 1.0},
                {"converged", true},
            };
        } catch (const std::exception& e) {
            j["validator"] = {{"error", e.what()}, {"converged", false}};
            rc = 3; // analytic part of the report is still emitted
        }
    }
    emit(opt, j.dump(2) + "\n");
    return rc;
}

int cmd_validate(const Options& opt) {
    if (opt.format == "csv")
        throw std::domain_error("validate reports are JSON only");
    ModelParams mp{opt.gamma, opt.q};
    mp.validate();
    SeriesOptions sopt;
    sopt.grid = KGrid::logarithmic(opt.kmin, opt.kmax, opt.knodes);
    const JumpReport rep = epsilon_T(mp, opt.orders, 1.0, sopt);

    // Leading coefficient forced by conservation of the flux moment through
    // the wall: eps_T = (1+q)/(1-q) * 2 g_3 / (3 g_4) + O(1).
    const double identity =
        (1.0 + opt.q) / (1.0 - opt.q) * 2.0 * moment(3.0) / (3.0 * moment(4.0));

    const HalfspaceGrid base = make_grid(opt);
    json table = json::array();
    double eps_base = 0.0;
    auto run_one = [&](const char* label, HalfspaceGrid g) {
        const HalfspaceField f = solve_halfspace(mp, 1.0, g);
        const double e = extract_temperature_jump(f, 1.0);
        table.push_back({{"grid", label},
                         {"epsilon_T", e},
                         {"x_nodes", g.x_nodes},
                         {"mu_half", g.mu_half},
                         {"c_nodes", g.c_nodes}});
        return e;
    };
    eps_base = run_one("base", base);
    {
        HalfspaceGrid g = base;
        g.x_nodes = 2 * g.x_nodes - 1;
        run_one("x2", g);
    }
    {
        HalfspaceGrid g = base;
        g.mu_half *= 2;
        run_one("mu2", g);
    }
    {
        HalfspaceGrid g = base;
        g.c_nodes *= 2;
        run_one("c2", g);
    }

    json j;
    j["schema_version"] = 1;
    j["gamma"] = opt.gamma;
    j["q"] = opt.q;
    j["analytic_epsilon_T"] = rep.epsilon_T;
    j["identity_epsilon_T"] = identity;
    j["numerical_epsilon_T"] = eps_base;
    j["deviation_vs_analytic"] = eps_base / rep.epsilon_T - 1.0;
    j["deviation_vs_identity"] = eps_base / identity - 1.0;
    j["refinement"] = table;
    emit(opt, j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"temperature jump and Kapitsa resistance of a degenerate Bose gas"};
    app.require_subcommand(1);

    Options opt;
    std::string config_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--gamma", opt.gamma, "collision exponent gamma");
        sub->add_option("--q", opt.q, "specular reflection coefficient");
        sub->add_option("--orders", opt.orders, "series orders (>= 1)");
        sub->add_option("--kmin", opt.kmin, "wavenumber grid minimum");
        sub->add_option("--kmax", opt.kmax, "wavenumber grid maximum");
        sub->add_option("--knodes", opt.knodes, "wavenumber grid size");
        sub->add_option("--slab-L", opt.slab_L, "validator slab depth");
        sub->add_option("--mu-nodes", opt.mu_nodes, "validator ordinates per half-range");
        sub->add_option("--c-nodes", opt.c_nodes, "validator speed nodes");
        sub->add_option("--phys", opt.phys, "T_s=..,u0=..,s=..[,a=..,n=..,m=..]");
        sub->add_option("--out", opt.out, "output path (default: stdout)");
        sub->add_option("--format", opt.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json", ""}));
        sub->add_option("--config", config_path, "flat key=value config file");
    };

    CLI::App* moments = app.add_subcommand("moments", "Bose moment table g_n");
    CLI::App* dispersion = app.add_subcommand("dispersion", "omega(k), lambda(k) curve");
    CLI::App* jump = app.add_subcommand("jump", "temperature-jump report");
    jump->add_flag("--validate", opt.validate, "attach the discrete-ordinates cross-check");
    CLI::App* figure1 = app.add_subcommand("figure1", "C(gamma) dataset, q in {0.3,0.5,0.8}");
    CLI::App* figure2 = app.add_subcommand("figure2", "C(q) dataset, gamma in {3,4,5}");
    CLI::App* validate = app.add_subcommand("validate", "analytic vs numerical epsilon_T");
    for (CLI::App* sub : {moments, dispersion, jump, figure1, figure2, validate})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (!config_path.empty()) {
            // File values must not override explicit flags: re-parse flags on
            // top of the file-derived defaults.
            apply_config(opt, read_config(config_path));
            opt.validate = false;
            app.clear();
            app.parse(argc, argv);
        }
        if (opt.orders < 1) throw std::domain_error("--orders must be >= 1");
        if (moments->parsed()) return cmd_moments(opt);
        if (dispersion->parsed()) return cmd_dispersion(opt);
        if (jump->parsed()) return cmd_jump(opt);
        if (figure1->parsed()) return cmd_figure1(opt);
        if (figure2->parsed()) return cmd_figure2(opt);
        if (validate->parsed()) return cmd_validate(opt);
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
