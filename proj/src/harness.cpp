#include "shocklab/harness.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "shocklab/numerics.hpp"
#include "shocklab/relent.hpp"

namespace shocklab {

using nlohmann::json;

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
    if (!j.is_object()) fail(ErrorCode::config, where + ": expected an object");
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (item.key() == k) {
                ok = true;
                break;
            }
        if (!ok) fail(ErrorCode::config, where + ": unknown key '" + item.key() + "'");
    }
}

double get_num(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) fail(ErrorCode::config, where + ": missing '" + key + "'");
    if (!j[key].is_number()) fail(ErrorCode::config, where + ": '" + key + "' must be a number");
    return j[key].get<double>();
}

double get_num_or(const json& j, const char* key, double fallback) {
    return j.contains(key) ? j[key].get<double>() : fallback;
}

StateVector get_state(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_array())
        fail(ErrorCode::config, where + ": missing state array '" + key + "'");
    const auto& arr = j[key];
    if (arr.size() < 1 || arr.size() > 3)
        fail(ErrorCode::config, where + ": state must have 1 to 3 components");
    StateVector u = StateVector::zero(static_cast<int>(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i) u[static_cast<int>(i)] = arr[i].get<double>();
    return u;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

json state_to_json(const StateVector& u) {
    json a = json::array();
    for (int i = 0; i < u.size(); ++i) a.push_back(u[i]);
    return a;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ScenarioConfig ScenarioConfig::from_json(const json& j) {
    check_keys(j,
               {"system", "shock", "grid", "solver", "initial", "drift", "constants",
                "sampling", "output", "snapshot_every", "seed"},
               "scenario");
    ScenarioConfig cfg;

    const json& sysj = j.at("system");
    check_keys(sysj, {"name", "pressure", "gamma"}, "system");
    cfg.system_name = sysj.at("name").get<std::string>();
    cfg.pressure = sysj.contains("pressure") ? sysj["pressure"].get<std::string>() : "rho2";
    cfg.gamma = get_num_or(sysj, "gamma", 1.4);

    const json& sh = j.at("shock");
    if (sh.contains("base")) {
        check_keys(sh, {"base", "s", "family", "curve_points", "s_max"}, "shock");
        cfg.shock.from_curve = true;
        cfg.shock.base = get_state(sh, "base", "shock");
        cfg.shock.s = get_num(sh, "s", "shock");
        const int fam = static_cast<int>(get_num_or(sh, "family", 1));
        if (fam != 1 && fam != -1)
            fail(ErrorCode::config, "shock: family must be 1 (first) or -1 (last)");
        cfg.shock.family = fam == 1 ? ShockFamily::one_shock : ShockFamily::n_shock;
        cfg.shock.curve_points = static_cast<int>(get_num_or(sh, "curve_points", 240));
        cfg.shock.curve_s_max = get_num_or(sh, "s_max", 0.0);
    } else {
        check_keys(sh, {"left", "right", "sigma"}, "shock");
        cfg.shock.from_curve = false;
        cfg.shock.left = get_state(sh, "left", "shock");
        cfg.shock.right = get_state(sh, "right", "shock");
        cfg.shock.sigma = get_num(sh, "sigma", "shock");
    }

    const json& gj = j.at("grid");
    check_keys(gj, {"x_min", "x_max", "n_cells"}, "grid");
    cfg.grid.x_min = get_num(gj, "x_min", "grid");
    cfg.grid.x_max = get_num(gj, "x_max", "grid");
    cfg.grid.n_cells = static_cast<int>(get_num(gj, "n_cells", "grid"));
    cfg.grid.validate();

    const json& sv = j.at("solver");
    check_keys(sv, {"cfl", "end_time", "boundary"}, "solver");
    cfg.cfl = get_num_or(sv, "cfl", 0.45);
    if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) fail(ErrorCode::config, "solver: cfl must be in (0, 1]");
    cfg.end_time = get_num(sv, "end_time", "solver");
    const std::string b = sv.contains("boundary") ? sv["boundary"].get<std::string>() : "farfield";
    if (b == "farfield")
        cfg.boundary = BoundaryKind::farfield;
    else if (b == "periodic")
        cfg.boundary = BoundaryKind::periodic;
    else
        fail(ErrorCode::config, "solver: unknown boundary '" + b + "'");

    const json& in = j.at("initial");
    check_keys(in, {"kind", "offset", "amplitude", "width", "center", "r", "eps", "seed",
                    "support"},
               "initial");
    const std::string kind = in.at("kind").get<std::string>();
    if (kind == "pure_shock") {
        cfg.initial.kind = InitialKind::pure_shock;
        cfg.initial.offset = get_num_or(in, "offset", 0.0);
    } else if (kind == "shock_plus_bump") {
        cfg.initial.kind = InitialKind::shock_plus_bump;
        cfg.initial.amplitude = get_num_or(in, "amplitude", 0.0);
        cfg.initial.width = get_num_or(in, "width", 0.5);
        cfg.initial.center = get_num_or(in, "center", -1.0);
    } else if (kind == "prop14") {
        cfg.initial.kind = InitialKind::prop14;
        cfg.initial.r = get_num(in, "r", "initial");
        cfg.initial.eps = get_num(in, "eps", "initial");
    } else if (kind == "random_perturbation") {
        cfg.initial.kind = InitialKind::random_perturbation;
        cfg.initial.amplitude = get_num(in, "amplitude", "initial");
        cfg.initial.seed = static_cast<std::uint64_t>(get_num_or(in, "seed", 0));
        if (!in.contains("support") || !in["support"].is_array() || in["support"].size() != 2)
            fail(ErrorCode::config, "initial: random_perturbation needs support [lo, hi]");
        cfg.initial.support_lo = in["support"][0].get<double>();
        cfg.initial.support_hi = in["support"][1].get<double>();
    } else {
        fail(ErrorCode::config, "initial: unknown kind '" + kind + "'");
    }

    if (j.contains("drift")) {
        check_keys(j["drift"], {"window_cells", "stencil_skip"}, "drift");
        cfg.drift.window_cells = static_cast<int>(get_num_or(j["drift"], "window_cells", 4));
        cfg.drift.stencil_skip = static_cast<int>(get_num_or(j["drift"], "stencil_skip", 2));
    }
    if (j.contains("constants")) {
        check_keys(j["constants"], {"v", "a"}, "constants");
        if (j["constants"].contains("v")) cfg.override_v = j["constants"]["v"].get<double>();
        if (j["constants"].contains("a")) cfg.override_a = j["constants"]["a"].get<double>();
    }
    if (j.contains("sampling")) {
        check_keys(j["sampling"], {"n_samples"}, "sampling");
        cfg.sampling.n_samples = static_cast<int>(get_num_or(j["sampling"], "n_samples", 10000));
    }
    if (j.contains("output")) cfg.out_dir = j["output"].get<std::string>();
    if (j.contains("snapshot_every"))
        cfg.snapshot_every = static_cast<int>(j["snapshot_every"].get<double>());
    if (j.contains("seed")) cfg.seed = static_cast<std::uint64_t>(j["seed"].get<double>());
    cfg.sampling.seed = cfg.seed;
    return cfg;
}

json ScenarioConfig::to_json() const {
    json j;
    j["system"] = {{"name", system_name}, {"pressure", pressure}, {"gamma", gamma}};
    if (shock.from_curve) {
        j["shock"] = {{"base", state_to_json(shock.base)},
                      {"s", shock.s},
                      {"family", shock.family == ShockFamily::one_shock ? 1 : -1},
                      {"curve_points", shock.curve_points},
                      {"s_max", shock.curve_s_max}};
    } else {
        j["shock"] = {{"left", state_to_json(shock.left)},
                      {"right", state_to_json(shock.right)},
                      {"sigma", shock.sigma}};
    }
    j["grid"] = {{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"n_cells", grid.n_cells}};
    j["solver"] = {{"cfl", cfl},
                   {"end_time", end_time},
                   {"boundary", boundary == BoundaryKind::periodic ? "periodic" : "farfield"}};
    json in;
    switch (initial.kind) {
        case InitialKind::pure_shock:
            in = {{"kind", "pure_shock"}, {"offset", initial.offset}};
            break;
        case InitialKind::shock_plus_bump:
            in = {{"kind", "shock_plus_bump"},
                  {"amplitude", initial.amplitude},
                  {"width", initial.width},
                  {"center", initial.center}};
            break;
        case InitialKind::prop14:
            in = {{"kind", "prop14"}, {"r", initial.r}, {"eps", initial.eps}};
            break;
        case InitialKind::random_perturbation:
            in = {{"kind", "random_perturbation"},
                  {"amplitude", initial.amplitude},
                  {"seed", initial.seed},
                  {"support", {initial.support_lo, initial.support_hi}}};
            break;
    }
    j["initial"] = in;
    j["drift"] = {{"window_cells", drift.window_cells}, {"stencil_skip", drift.stencil_skip}};
    if (override_v || override_a) {
        json c;
        if (override_v) c["v"] = *override_v;
        if (override_a) c["a"] = *override_a;
        j["constants"] = c;
    }
    j["sampling"] = {{"n_samples", sampling.n_samples}};
    j["snapshot_every"] = snapshot_every;
    j["seed"] = seed;
    return j;
}

namespace {

SystemDescriptor resolve_system(const ScenarioConfig& cfg) {
    return make_system(cfg.system_name, cfg.pressure, cfg.gamma);
}

ShockTriple resolve_shock(const SystemDescriptor& sys, const ShockSpec& spec) {
    if (!spec.from_curve) {
        ShockTriple t{spec.left, spec.right, spec.sigma};
        if (rh_residual_scaled(sys, t) > 1e-8)
            fail(ErrorCode::config, "shock: endpoints do not satisfy Rankine-Hugoniot at sigma");
        const RhResidual rr = rh_residual(sys, t.left, t.right, t.sigma);
        if (rr.entropy_production > 1e-8)
            fail(ErrorCode::config, "shock: endpoints are not entropy admissible");
        return t;
    }
    const double smax = spec.curve_s_max > 0.0 ? spec.curve_s_max : 1.5 * spec.s;
    const ShockCurve curve = shock_curve(sys, spec.base, spec.family, smax, spec.curve_points);
    const ShockCurvePoint p = curve.at(spec.s);
    if (spec.family == ShockFamily::one_shock) return {spec.base, p.state, p.sigma};
    return {p.state, spec.base, p.sigma};
}

DomainBox field_box(const SystemDescriptor& sys, const FieldSnapshot& field,
                    const ShockTriple& shock) {
    DomainBox box;
    box.dim = sys.dim;
    for (int i = 0; i < sys.dim; ++i) {
        box.lo[i] = std::numeric_limits<double>::infinity();
        box.hi[i] = -std::numeric_limits<double>::infinity();
    }
    auto absorb = [&](const StateVector& u) {
        const StateVector p = sys.to_primitive(u);
        for (int i = 0; i < sys.dim; ++i) {
            box.lo[i] = std::min(box.lo[i], p[i]);
            box.hi[i] = std::max(box.hi[i], p[i]);
        }
    };
    for (const auto& u : field.cells) absorb(u);
    absorb(shock.left);
    absorb(shock.right);
    for (int i = 0; i < sys.dim; ++i) {
        const double pad = 0.2 * std::max(1e-6, box.hi[i] - box.lo[i]);
        box.lo[i] -= pad;
        box.hi[i] += pad;
    }
    if (sys.dim >= 2) box.lo[0] = std::max(box.lo[0], 1e-3); // keep the box clear of vacuum
    if (sys.dim == 3) box.lo[2] = std::max(box.lo[2], 1e-3); // and of zero internal energy
    return box;
}

ContractionConfig resolve_constants(const SystemDescriptor& sys, const ScenarioConfig& cfg,
                                    const ShockTriple& shock) {
    if (cfg.override_v && cfg.override_a) {
        ContractionConfig cc;
        cc.shock = shock;
        cc.v = *cfg.override_v;
        if (!(shock.sigma < cc.v && cc.v < sys.eigenvalues(shock.left).first))
            fail(ErrorCode::config, "constants override: v outside (sigma, lambda-(U_L))");
        const BallConstants ball = find_ball_constants(sys, shock, cc.v, cfg.sampling);
        cc.C0 = ball.C0;
        cc.beta = ball.beta;
        cc.a = *cfg.override_a;
        if (!(cc.a > 0.0 && cc.a < 1.0))
            fail(ErrorCode::config, "constants override: a outside (0, 1)");
        const double rad =
            oa_radius(sys, shock.left, shock.right, cc.a, SamplingSpec{128, cfg.seed});
        if (rad > 0.5 * cc.C0)
            fail(ErrorCode::config, "constants override: O_a exceeds half the plateau ball");
        cc.epsilon = std::max(rad / cc.C0, 1e-6);
        cc.audit.seed = cfg.seed;
        cc.audit.oa_radius = rad;
        return cc;
    }
    if (cfg.override_v || cfg.override_a)
        fail(ErrorCode::config, "constants override: provide both v and a, or neither");
    return build_contraction_config(sys, shock, cfg.sampling, AStarGrids{});
}

void write_snapshot(const SystemDescriptor& sys, const FieldSnapshot& field,
                    const std::string& dir, int index) {
    char name[64];
    std::snprintf(name, sizeof(name), "snap_%06d.csv", index);
    std::ofstream out(std::filesystem::path(dir) / name);
    out << "x_center";
    for (int c = 0; c < sys.dim; ++c) out << ",u" << c;
    out << "\n";
    for (int i = 0; i < field.grid.n_cells; ++i) {
        out << format_double(field.grid.center(i));
        const auto& u = field.cells[static_cast<std::size_t>(i)];
        for (int c = 0; c < sys.dim; ++c) out << "," << format_double(u[c]);
        out << "\n";
    }
}

} // namespace

std::string series_to_csv(const RunSeries& s) {
    std::ostringstream out;
    out << "t,Ea,l2_dist,x,xdot,vmin,vmax,Dt\n";
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        out << format_double(s.t[i]) << ',' << format_double(s.Ea[i]) << ','
            << format_double(s.l2[i]) << ',' << format_double(s.x[i]) << ','
            << format_double(s.xdot[i]) << ',' << format_double(s.v_min[i]) << ','
            << format_double(s.v_max[i]) << ',' << format_double(s.Dt[i]) << "\n";
    }
    return out.str();
}

json constants_to_json(const ContractionConfig& cfg) {
    json j;
    j["sigma"] = cfg.shock.sigma;
    j["v_band"] = {cfg.audit.band_lo, cfg.audit.band_hi};
    j["v"] = cfg.v;
    j["C0"] = cfg.C0;
    j["beta"] = cfg.beta;
    j["epsilon"] = cfg.epsilon;
    j["a"] = cfg.a;
    j["a_star"] = cfg.audit.a_star;
    j["oa_radius"] = cfg.audit.oa_radius;
    j["sample_counts"] = {{"ball", cfg.audit.n_ball_samples},
                          {"oa_rays", cfg.audit.n_oa_rays},
                          {"bank_curves", cfg.audit.n_bank_curves},
                          {"s_grid", cfg.audit.n_s_grid}};
    j["seed"] = cfg.audit.seed;
    j["margins"] = {{"ball_worst", cfg.audit.worst_ball_margin},
                    {"master_worst", cfg.audit.worst_master},
                    {"kappa", cfg.audit.kappa},
                    {"C_lip", cfg.audit.C_lip}};
    j["u_left"] = state_to_json(cfg.shock.left);
    j["u_right"] = state_to_json(cfg.shock.right);
    return j;
}

json verdicts_to_json(const RunRecord& rec) {
    json j;
    j["contraction"] = {{"pass", rec.verdicts.contraction.pass},
                        {"max_violation", rec.verdicts.contraction.max_violation},
                        {"tolerance", rec.verdicts.contraction.tolerance}};
    j["drift_bound"] = {{"p", rec.verdicts.drift_bound.exponent},
                        {"pass", rec.verdicts.drift_bound.pass},
                        {"vacuous", rec.verdicts.drift_bound.vacuous},
                        {"n_points", rec.verdicts.drift_bound.n_points}};
    j["l2"] = {{"pass", rec.verdicts.l2.pass},
               {"ratio", rec.verdicts.l2.ratio},
               {"bound", rec.verdicts.l2.bound},
               {"max_distance", rec.verdicts.l2.max_distance}};
    j["dissipation"] = {{"violations", rec.verdicts.dissipation.violations},
                        {"worst", rec.verdicts.dissipation.worst},
                        {"steps", rec.verdicts.dissipation.steps},
                        {"tolerance", rec.verdicts.dissipation.tolerance}};
    j["sandwich"] = {{"violations", rec.verdicts.sandwich_violations},
                     {"steps", rec.verdicts.sandwich_steps}};
    j["u0_distance"] = rec.u0_distance;
    j["comparability"] = {{"C1", rec.c1}, {"C2", rec.c2}};
    j["C_K"] = rec.c_k;
    j["scenario_hash"] = rec.scenario_hash;
    j["wall_ms"] = rec.wall_ms;
    j["exit_code"] = rec.exit_code;
    return j;
}

RunRecord run_scenario(const ScenarioConfig& cfg) {
    const auto t_start = std::chrono::steady_clock::now();

    const SystemDescriptor sys = resolve_system(cfg);
    const ShockTriple shock = resolve_shock(sys, cfg.shock);

    RunRecord rec;
    rec.scenario_hash = [&] {
        char buf[20];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(fnv1a(cfg.to_json().dump())));
        return std::string(buf);
    }();
    rec.constants = resolve_constants(sys, cfg, shock);

    FieldSnapshot field = initial_data(sys, shock, cfg.grid, cfg.initial);
    rec.u0_distance = l2_distance_to_step(field, shock.left, shock.right, 0.0);

    const DomainBox box = field_box(sys, field, shock);
    std::tie(rec.c1, rec.c2) = comparability_constants(
        sys, {shock.left, shock.right}, box, 2000, cfg.seed);
    for (const auto& u : sample_box(sys, box, 2000, cfg.seed + 1))
        rec.c_k = std::max(rec.c_k, std::abs(shift_velocity(sys, u, rec.constants)));

    SolverConfig scfg;
    scfg.cfl = cfg.cfl;
    scfg.boundary = cfg.boundary;
    scfg.left_bc = shock.left;
    scfg.right_bc = shock.right;
    scfg.scheme = default_scheme(sys);
    scfg.end_time = cfg.end_time;

    const double dx = cfg.grid.dx();
    const double window_h = cfg.drift.window_cells * dx;
    const PseudoNormConfig pnorm{shock.left, shock.right, rec.constants.a, 0.0};

    RunSeries& s = rec.series;
    s.dx = dx;
    s.sigma = shock.sigma;
    s.T = cfg.end_time;
    const auto push_row = [&](double t, double Ea, double l2, double x, double xdot,
                              double vmin, double vmax, double Dt) {
        s.t.push_back(t);
        s.Ea.push_back(Ea);
        s.l2.push_back(l2);
        s.x.push_back(x);
        s.xdot.push_back(xdot);
        s.v_min.push_back(vmin);
        s.v_max.push_back(vmax);
        s.Dt.push_back(Dt);
    };

    double x = 0.0;
    PseudoNormConfig pn = pnorm;
    push_row(0.0, pseudo_norm(sys, field, pn), rec.u0_distance, 0.0, 0.0, 0.0, 0.0, 0.0);

    if (!cfg.out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(cfg.out_dir, ec);
        if (ec) fail(ErrorCode::config, "output directory is not writable: " + cfg.out_dir);
    }
    if (cfg.snapshot_every > 0 && !cfg.out_dir.empty()) write_snapshot(sys, field, cfg.out_dir, 0);

    int step_index = 0;
    int sandwich_violations = 0;
    double t = 0.0;
    try {
        while (t < cfg.end_time - 1e-12) {
            const double dt = std::min(cfl_dt(sys, field, cfg.cfl), cfg.end_time - t);
            const TracePair traces = interface_traces(field, x, cfg.drift.stencil_skip);
            const DriftStepAudit audit =
                advance_drift(sys, rec.constants, field, x, dt, window_h);
            const double Dt = dissipation_check(sys, rec.constants, traces, audit.xdot);

            field = step(sys, field, scfg, dt);
            x = audit.x_new;
            t = field.time;
            ++step_index;

            if (audit.xdot < audit.v_min - 1e-8 || audit.xdot > audit.v_max + 1e-8)
                ++sandwich_violations;

            rec.drift.times.push_back(t);
            rec.drift.x.push_back(x);
            rec.drift.xdot.push_back(audit.xdot);
            rec.drift.v_min.push_back(audit.v_min);
            rec.drift.v_max.push_back(audit.v_max);
            rec.drift.traces.push_back(traces);
            rec.drift.dissipation.push_back(Dt);

            pn.split = x;
            push_row(t, pseudo_norm(sys, field, pn),
                     l2_distance_to_step(field, shock.left, shock.right, x), x, audit.xdot,
                     audit.v_min, audit.v_max, Dt);

            if (cfg.snapshot_every > 0 && !cfg.out_dir.empty() &&
                step_index % cfg.snapshot_every == 0)
                write_snapshot(sys, field, cfg.out_dir, step_index);
        }
    } catch (const Error& e) {
        // keep whatever was computed so the failure can be inspected
        if (!cfg.out_dir.empty()) {
            std::ofstream(std::filesystem::path(cfg.out_dir) / "series.csv") << series_to_csv(s);
            std::ofstream(std::filesystem::path(cfg.out_dir) / "constants.json")
                << constants_to_json(rec.constants).dump(2) << "\n";
        }
        // anything thrown mid-run is a runtime failure, not a config problem
        fail(ErrorCode::runtime,
             "time loop aborted at t = " + format_double(t) + ": " + e.what());
    }

    rec.verdicts.contraction = contraction_verdict(s, dx, cfg.end_time);
    rec.verdicts.drift_bound = drift_bound_check(s, rec.u0_distance);
    if (cfg.end_time < 10.0) {
        rec.verdicts.drift_bound.vacuous = true; // fit window needs t in [1, 10]
        rec.verdicts.drift_bound.pass = true;
    }
    rec.verdicts.l2 = l2_stability_check(s, rec.u0_distance, rec.c1, rec.c2, rec.constants.a);
    rec.verdicts.dissipation = dissipation_summary(s);
    rec.verdicts.sandwich_violations = sandwich_violations;
    rec.verdicts.sandwich_steps = step_index;

    const double frac_budget = 0.001;
    const bool dissipation_ok =
        rec.verdicts.dissipation.violations <=
        static_cast<int>(frac_budget * rec.verdicts.dissipation.steps);
    const bool sandwich_ok =
        sandwich_violations <= static_cast<int>(frac_budget * step_index);
    rec.verdicts.all_pass = rec.verdicts.contraction.pass && rec.verdicts.drift_bound.pass &&
                            rec.verdicts.l2.pass && dissipation_ok && sandwich_ok;
    rec.exit_code = rec.verdicts.all_pass ? 0 : 1;

    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            t_start)
                      .count();

    if (!cfg.out_dir.empty()) {
        std::ofstream(std::filesystem::path(cfg.out_dir) / "series.csv") << series_to_csv(s);
        std::ofstream(std::filesystem::path(cfg.out_dir) / "constants.json")
            << constants_to_json(rec.constants).dump(2) << "\n";
        std::ofstream(std::filesystem::path(cfg.out_dir) / "verdicts.json")
            << verdicts_to_json(rec).dump(2) << "\n";
    }
    return rec;
}

Prop14Report prop14_experiment(double r, double eps, double T, int n_steps) {
    Prop14Report rep;
    rep.r = r;
    rep.eps = eps;
    rep.T = T;
    rep.series = characteristics_drift_burgers(r, eps, T, n_steps);
    const auto& s = rep.series;

    double xmax = 0.0;
    for (const double v : s.x) xmax = std::max(xmax, std::abs(v));
    if (xmax < 1e-15) {
        rep.vacuous = true; // zero perturbation keeps the drift at the origin
        rep.bound_ok = true;
        rep.exponent_ok = true;
        rep.pass = true;
        return rep;
    }

    rep.bound_ok = s.x_lower_bound_ok;
    std::vector<double> lt, lx;
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        if (s.t[i] < 1.0 || s.x[i] <= 0.0) continue;
        lt.push_back(std::log(s.t[i]));
        lx.push_back(std::log(s.x[i]));
    }
    const num::LineFit fit = num::fit_line(lt, lx);
    rep.exponent = fit.slope;
    const double target = 0.5 - r;
    rep.exponent_ok = rep.exponent >= target - 0.05 && rep.exponent <= target + 0.05;
    rep.pass = rep.bound_ok && rep.exponent_ok;

    // interpolated drift at t = 1
    for (std::size_t i = 1; i < s.t.size(); ++i) {
        if (s.t[i] >= 1.0) {
            const double w = (1.0 - s.t[i - 1]) / (s.t[i] - s.t[i - 1]);
            rep.x_at_1 = s.x[i - 1] + w * (s.x[i] - s.x[i - 1]);
            break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// verification suite
// ---------------------------------------------------------------------------

namespace {

DomainBox pinned_box(const SystemDescriptor& sys) {
    DomainBox box;
    box.dim = sys.dim;
    if (sys.dim == 1) {
        box.lo[0] = -2.0;
        box.hi[0] = 2.0;
    } else if (sys.dim == 2) {
        box.lo = {0.1, -3.0, 0.0};
        box.hi = {3.0, 3.0, 0.0};
    } else {
        box.lo = {0.1, -2.0, 0.1};
        box.hi = {2.0, 2.0, 2.0};
    }
    return box;
}

VerifyItem item(const std::string& id, bool pass, double value, double threshold,
                const std::string& detail = "") {
    return VerifyItem{id, pass, value, threshold, detail};
}

double eigen_oracle_gap(const SystemDescriptor& sys, const StateVector& u) {
    const SmallMatrix jm = sys.flux_jacobian(u);
    Eigen::MatrixXd J(sys.dim, sys.dim);
    for (int i = 0; i < sys.dim; ++i)
        for (int k = 0; k < sys.dim; ++k) J(i, k) = jm(i, k);
    Eigen::EigenSolver<Eigen::MatrixXd> es(J);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < sys.dim; ++i) {
        lo = std::min(lo, es.eigenvalues()(i).real());
        hi = std::max(hi, es.eigenvalues()(i).real());
    }
    const auto [lm, lp] = sys.eigenvalues(u);
    return std::max(std::abs(lm - lo), std::abs(lp - hi));
}

StateVector reference_state(const SystemDescriptor& sys) {
    if (sys.dim == 1) return StateVector(1.0);
    if (sys.dim == 2) return StateVector(1.0, 0.0);
    return StateVector(1.0, 0.0, 1.0);
}

} // namespace

std::vector<VerifyItem> verify_system_items(const SystemDescriptor& sys,
                                            const std::string& tag) {
    std::vector<VerifyItem> items;
    const DomainBox box = pinned_box(sys);
    const auto samples = sample_box(sys, box, 100, 2024);

    const CompatibilityReport comp = compatibility_check(sys, samples, 1e-7);
    items.push_back(item(tag + ".compatibility", comp.pass, comp.max_residual, 1e-7));

    double min_eig = std::numeric_limits<double>::infinity();
    for (const auto& u : samples) min_eig = std::min(min_eig, entropy_hessian_min_eig(sys, u));
    items.push_back(item(tag + ".hessian_pd", min_eig > 0.0, min_eig, 0.0));

    double eig_gap = 0.0;
    for (int i = 0; i < 50; ++i) eig_gap = std::max(eig_gap, eigen_oracle_gap(sys, samples[i]));
    items.push_back(item(tag + ".eigenvalues", eig_gap < 1e-8, eig_gap, 1e-8));

    double min_re = std::numeric_limits<double>::infinity();
    const StateVector ref = reference_state(sys);
    for (const auto& u : samples) min_re = std::min(min_re, rel_entropy(sys, u, ref));
    items.push_back(item(tag + ".rel_entropy_nonneg", min_re >= 0.0, min_re, 0.0));
    return items;
}

VerifyReport verify_suite() {
    VerifyReport rep;
    auto add = [&](const VerifyItem& it) { rep.items.push_back(it); };

    const SystemDescriptor burgers = make_burgers();
    const SystemDescriptor iso = make_isentropic(pressure_rho2());
    const SystemDescriptor euler = make_euler(1.4);
    struct Entry {
        const SystemDescriptor* sys;
        std::string tag;
    };
    const std::vector<Entry> systems = {{&burgers, "burgers"}, {&iso, "isentropic"},
                                        {&euler, "euler"}};

    for (const auto& e : systems)
        for (const auto& it : verify_system_items(*e.sys, e.tag)) add(it);

    // comparability constants (Burgers closed form, Euler boxes recorded)
    {
        const auto [c1, c2] = comparability_constants(burgers, {StateVector(1.0)},
                                                      pinned_box(burgers), 4000, 7);
        add(item("comparability.burgers",
                 std::abs(c1 - 0.5) < 1e-12 && std::abs(c2 - 0.5) < 1e-12,
                 std::max(std::abs(c1 - 0.5), std::abs(c2 - 0.5)), 1e-12));
    }
    for (const auto& e : std::vector<Entry>{{&iso, "isentropic"}, {&euler, "euler"}}) {
        const auto [c1, c2] = comparability_constants(*e.sys, {reference_state(*e.sys)},
                                                      pinned_box(*e.sys), 4000, 7);
        add(item("comparability." + e.tag, c1 > 0.0 && c2 >= c1, c1, 0.0,
                 "C1=" + format_double(c1) + " C2=" + format_double(c2)));
    }

    // dissipation identity along the shock curves
    {
        const auto id = lax_dissipation_identity(burgers, StateVector(1.0), 2.0, StateVector(0.5));
        add(item("dissipation_identity.burgers", std::abs(id.gap) < 1e-8, std::abs(id.gap), 1e-8));
    }
    for (const auto& e : std::vector<Entry>{{&iso, "isentropic"}, {&euler, "euler"}}) {
        const ShockCurve curve =
            shock_curve(*e.sys, reference_state(*e.sys), ShockFamily::one_shock, 1.2, 320);
        const StateVector mid = curve.at(0.3).state;
        const auto id = lax_dissipation_identity(curve, 0.6, mid);
        add(item("dissipation_identity." + e.tag, std::abs(id.gap) < 1e-6, std::abs(id.gap),
                 1e-6));
    }

    // curve self-dissipation: anchor value and sign sweep
    {
        const ShockCurve curve = shock_curve(burgers, StateVector(1.0), ShockFamily::one_shock,
                                             3.0, 121);
        const DipernaResult d = diperna_dissipation(curve, 1.0, 2.0);
        add(item("curve_dissipation.anchor",
                 std::abs(d.D + 5.0 / 6.0) < 1e-10 && std::abs(d.D - d.D_integral) < 1e-10,
                 std::abs(d.D + 5.0 / 6.0), 1e-10));
    }
    for (const auto& e : systems) {
        const ShockCurve curve = shock_curve(*e.sys, reference_state(*e.sys),
                                             ShockFamily::one_shock,
                                             e.sys->dim == 1 ? 3.0 : 1.2, 121);
        const double s0 = 0.6 * curve.s_max();
        double worst = -std::numeric_limits<double>::infinity();
        double kappa = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 20; ++i) {
            const double si = curve.s_max() * i / 20.0;
            const DipernaResult d = diperna_dissipation(curve, si, s0);
            worst = std::max(worst, d.D);
            kappa = std::min(kappa, d.kappa);
        }
        add(item("curve_dissipation.nonpositive." + e.tag, worst <= 1e-12, worst, 1e-12,
                 "kappa=" + format_double(kappa)));
    }

    // contraction constants for the three pinned shocks
    {
        const ShockTriple shock{StateVector(1.0), StateVector(-1.0), 0.0};
        const ContractionConfig cc = build_contraction_config(burgers, shock);
        const bool band_ok = std::abs(cc.audit.band_lo - 2.0 / 3.0) < 1e-6 &&
                             std::abs(cc.audit.band_hi - 2.0) < 1e-6;
        add(item("constants.burgers.band", band_ok, cc.audit.band_lo, 2.0 / 3.0));
        add(item("constants.burgers.C0", cc.C0 >= 0.30 && cc.C0 <= 1.0 / 3.0 + 1e-6, cc.C0,
                 1.0 / 3.0));
        add(item("constants.burgers.a", cc.a > 0.0 && cc.a <= 0.006, cc.a, 0.006));
        add(item("constants.burgers.recheck", recheck_contraction_config(burgers, cc, 99), 1.0,
                 1.0));
    }
    for (const auto& e : std::vector<Entry>{{&iso, "isentropic"}, {&euler, "euler"}}) {
        const ShockCurve curve =
            shock_curve(*e.sys, reference_state(*e.sys), ShockFamily::one_shock, 0.9, 160);
        const ShockCurvePoint p = curve.at(0.6);
        const ShockTriple shock{reference_state(*e.sys), p.state, p.sigma};
        const ContractionConfig cc = build_contraction_config(*e.sys, shock);
        add(item("constants." + e.tag + ".built",
                 cc.v > shock.sigma && cc.C0 > 0.0 && cc.beta > 0.0 && cc.a > 0.0 && cc.a < 1.0,
                 cc.a, 1.0,
                 "v=" + format_double(cc.v) + " C0=" + format_double(cc.C0) +
                     " a=" + format_double(cc.a)));
        add(item("constants." + e.tag + ".recheck", recheck_contraction_config(*e.sys, cc, 99),
                 1.0, 1.0));
    }

    // Liu + strengthening audits and reflection duality on both families
    for (const auto& e : systems) {
        const double smax = e.sys->dim == 1 ? 2.5 : 1.0;
        const ShockCurve c1f = shock_curve(*e.sys, reference_state(*e.sys),
                                           ShockFamily::one_shock, smax, 121);
        const LiuStrengthenReport r1 = liu_strengthen_check(*e.sys, c1f);
        add(item("hypotheses." + e.tag + ".1family", r1.liu_pass && r1.strengthen_pass,
                 std::min(r1.min_liu_margin, r1.min_strengthen_margin), 0.0));

        const ShockCurve cnf = shock_curve(*e.sys, reference_state(*e.sys),
                                           ShockFamily::n_shock, smax, 121);
        const LiuStrengthenReport rn = liu_strengthen_check(*e.sys, cnf);
        add(item("hypotheses." + e.tag + ".nfamily", rn.liu_pass && rn.strengthen_pass,
                 std::min(rn.min_liu_margin, rn.min_strengthen_margin), 0.0));

        double worst_rh = 0.0;
        for (const auto& p : cnf.points()) {
            const ShockTriple t{p.state, cnf.base(), p.sigma};
            worst_rh = std::max(worst_rh, rh_residual_scaled(*e.sys, t));
        }
        add(item("hypotheses." + e.tag + ".reflection_rh", worst_rh < 1e-10, worst_rh, 1e-10));
    }

    rep.all_pass = true;
    for (const auto& it : rep.items) rep.all_pass = rep.all_pass && it.pass;
    return rep;
}

json verify_report_to_json(const VerifyReport& rep) {
    json items = json::array();
    for (const auto& it : rep.items) {
        items.push_back({{"id", it.id},
                         {"pass", it.pass},
                         {"value", it.value},
                         {"threshold", it.threshold},
                         {"detail", it.detail}});
    }
    return json{{"all_pass", rep.all_pass}, {"items", items}};
}

} // namespace shocklab
