// Command-line front end: constants, curve, run, prop14, verify.
//
// Exit codes: 0 all verdicts pass, 1 verification failure,
// 2 configuration error, 3 runtime/numerical failure.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "shocklab/harness.hpp"

using namespace shocklab;
using nlohmann::json;

namespace {

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::config, "cannot open scenario file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        fail(ErrorCode::config, std::string("scenario parse error: ") + e.what());
    }
    return ScenarioConfig::from_json(j);
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::config:
        case ErrorCode::parameter:
        case ErrorCode::out_of_range:
        case ErrorCode::not_a_one_shock:
            return 2;
        default:
            return 3;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"relative-entropy shock contraction laboratory"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir, system_name = "burgers", pressure = "rho2";
    double gamma = 1.4, smax = 1.0, r = 0.1, eps = 0.01, T = 100.0;
    int family = 1, n_points = 240;
    std::vector<double> base_vals{1.0};

    auto* cmd_constants = app.add_subcommand("constants", "construct the contraction constants");
    cmd_constants->add_option("--scenario", scenario_path, "scenario JSON")->required();

    auto* cmd_curve = app.add_subcommand("curve", "sample a shock family as CSV");
    cmd_curve->add_option("--system", system_name, "burgers | isentropic | euler");
    cmd_curve->add_option("--pressure", pressure, "isentropic pressure law: rho2 | power");
    cmd_curve->add_option("--gamma", gamma, "adiabatic exponent");
    cmd_curve->add_option("--base", base_vals, "base state components")->expected(1, 3);
    cmd_curve->add_option("--family", family, "1 (first family) or -1 (last family)");
    cmd_curve->add_option("--smax", smax, "curve extent")->required();
    cmd_curve->add_option("--points", n_points, "number of samples");

    auto* cmd_run = app.add_subcommand("run", "run a scenario and write series + verdicts");
    cmd_run->add_option("--scenario", scenario_path, "scenario JSON")->required();
    cmd_run->add_option("--out", out_dir, "output directory (overrides the scenario)");

    auto* cmd_prop14 = app.add_subcommand("prop14", "exact-characteristics drift experiment");
    cmd_prop14->add_option("--r", r, "tail exponent parameter in (0, 1/2)");
    cmd_prop14->add_option("--eps", eps, "squared L2 size of the perturbation");
    cmd_prop14->add_option("--T", T, "final time");

    auto* cmd_verify = app.add_subcommand("verify", "run all identity and hypothesis audits");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_constants->parsed()) {
            const ScenarioConfig cfg = load_scenario(scenario_path);
            const SystemDescriptor sys = make_system(cfg.system_name, cfg.pressure, cfg.gamma);
            ShockTriple shock;
            if (cfg.shock.from_curve) {
                const double sm =
                    cfg.shock.curve_s_max > 0 ? cfg.shock.curve_s_max : 1.5 * cfg.shock.s;
                const ShockCurve curve =
                    shock_curve(sys, cfg.shock.base, cfg.shock.family, sm, cfg.shock.curve_points);
                const auto p = curve.at(cfg.shock.s);
                shock = cfg.shock.family == ShockFamily::one_shock
                            ? ShockTriple{cfg.shock.base, p.state, p.sigma}
                            : ShockTriple{p.state, cfg.shock.base, p.sigma};
            } else {
                shock = ShockTriple{cfg.shock.left, cfg.shock.right, cfg.shock.sigma};
            }
            const ContractionConfig cc = build_contraction_config(sys, shock, cfg.sampling);
            std::cout << constants_to_json(cc).dump(2) << "\n";
            return 0;
        }

        if (cmd_curve->parsed()) {
            const SystemDescriptor sys = make_system(system_name, pressure, gamma);
            if (static_cast<int>(base_vals.size()) != sys.dim)
                fail(ErrorCode::config, "curve: base state has the wrong dimension");
            StateVector base = StateVector::zero(sys.dim);
            for (int i = 0; i < sys.dim; ++i) base[i] = base_vals[static_cast<std::size_t>(i)];
            const ShockFamily fam = family == 1 ? ShockFamily::one_shock : ShockFamily::n_shock;
            const ShockCurve curve = shock_curve(sys, base, fam, smax, n_points);
            const LiuStrengthenReport rep = liu_strengthen_check(sys, curve);

            std::cout << "s";
            for (int c = 0; c < sys.dim; ++c) std::cout << ",u" << c;
            std::cout << ",sigma,liu_margin,strengthen_margin\n";
            for (const auto& row : rep.rows) {
                const auto p = curve.at(row.s);
                std::cout << format_double(row.s);
                for (int c = 0; c < sys.dim; ++c) std::cout << "," << format_double(p.state[c]);
                std::cout << "," << format_double(row.sigma) << ","
                          << format_double(row.liu_margin) << ","
                          << format_double(row.strengthen_margin) << "\n";
            }
            return rep.liu_pass && rep.strengthen_pass ? 0 : 1;
        }

        if (cmd_run->parsed()) {
            ScenarioConfig cfg = load_scenario(scenario_path);
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            const RunRecord rec = run_scenario(cfg);
            std::cout << verdicts_to_json(rec).dump(2) << "\n";
            return rec.exit_code;
        }

        if (cmd_prop14->parsed()) {
            const Prop14Report rep = prop14_experiment(r, eps, T);
            json j;
            j["r"] = rep.r;
            j["eps"] = rep.eps;
            j["T"] = rep.T;
            j["bound_ok"] = rep.bound_ok;
            j["exponent"] = rep.exponent;
            j["exponent_ok"] = rep.exponent_ok;
            j["x_at_1"] = rep.x_at_1;
            j["worst_bound_gap"] = rep.series.worst_x_gap;
            j["vacuous"] = rep.vacuous;
            j["pass"] = rep.pass;
            std::cout << j.dump(2) << "\n";
            return rep.pass ? 0 : 1;
        }

        if (cmd_verify->parsed()) {
            const VerifyReport rep = verify_suite();
            std::cout << verify_report_to_json(rep).dump(2) << "\n";
            return rep.all_pass ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
