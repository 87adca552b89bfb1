#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "shocklab/constants.hpp"
#include "shocklab/monitor.hpp"
#include "shocklab/solver.hpp"

namespace shocklab {

/// Shock selection: explicit endpoints with speed, or a base state plus the
/// curve parameter of the 1-family.
struct ShockSpec {
    bool from_curve = false;
    StateVector left, right;
    double sigma = 0.0;
    StateVector base;
    double s = 0.0;
    ShockFamily family = ShockFamily::one_shock;
    int curve_points = 240;
    double curve_s_max = 0.0; // 0: 1.5x the requested s
};

struct DriftSpec {
    int window_cells = 4;
    int stencil_skip = 2;
};

struct ScenarioConfig {
    std::string system_name = "burgers";
    std::string pressure = "rho2";
    double gamma = 1.4;

    ShockSpec shock;
    Grid1D grid;
    double cfl = 0.45;
    double end_time = 1.0;
    BoundaryKind boundary = BoundaryKind::farfield;

    InitialSpec initial;
    DriftSpec drift;

    std::optional<double> override_v;
    std::optional<double> override_a;

    SamplingSpec sampling;
    std::string out_dir;
    int snapshot_every = 0;
    std::uint64_t seed = 0;

    /// Strict parse: unknown keys anywhere are a config error.
    static ScenarioConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct Verdicts {
    ContractionVerdict contraction;
    DriftBoundVerdict drift_bound;
    L2Verdict l2;
    DissipationSummary dissipation;
    int sandwich_violations = 0;
    int sandwich_steps = 0;
    bool all_pass = false;
};

struct RunRecord {
    std::string scenario_hash;
    ContractionConfig constants;
    RunSeries series;
    DriftTrajectory drift;     // per-step drift record including the traces
    Verdicts verdicts;
    double u0_distance = 0.0;
    double c1 = 0.0, c2 = 0.0; // comparability constants of the run box
    double c_k = 0.0;          // sampled bound on |V| over the run box
    double wall_ms = 0.0;
    int exit_code = 0;
};

/// Orchestrates one scenario: constants, solver and drift in lockstep,
/// series and verdicts; writes series.csv / constants.json / verdicts.json
/// when an output directory is set.
RunRecord run_scenario(const ScenarioConfig& cfg);

struct VerifyItem {
    std::string id;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyItem> items;
    bool all_pass = false;
};

/// Identity and hypothesis audits for the three built-in systems at pinned
/// parameters.
VerifyReport verify_suite();

/// Audit items for a single system (compatibility, Hessian, eigenvalues).
std::vector<VerifyItem> verify_system_items(const SystemDescriptor& sys,
                                            const std::string& tag);

struct Prop14Report {
    CharacteristicsSeries series;
    double r = 0.0, eps = 0.0, T = 0.0;
    bool bound_ok = false;     // closed-form lower bound on t in [1, T]
    double exponent = 0.0;     // log-log fit of x(t) on t in [1, T]
    bool exponent_ok = false;  // within [1/2 - r - 0.05, 1/2 - r + 0.05]
    bool vacuous = false;      // eps = 0: x stays 0
    bool pass = false;
    double x_at_1 = 0.0;
};

/// Exact-characteristics drift growth experiment for the steady Burgers
/// shock; reports the drift against its closed-form lower bound and the
/// fitted growth exponent.
Prop14Report prop14_experiment(double r, double eps, double T, int n_steps = 200000);

// Serialization helpers shared by the CLI and the test suites.
std::string format_double(double v); // shortest round-trip decimal
std::string series_to_csv(const RunSeries& series);
nlohmann::json constants_to_json(const ContractionConfig& cfg);
nlohmann::json verdicts_to_json(const RunRecord& rec);
nlohmann::json verify_report_to_json(const VerifyReport& rep);

} // namespace shocklab
