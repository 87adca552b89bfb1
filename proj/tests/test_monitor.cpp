#include "doctest.h"

#include <cmath>
#include <random>

#include "shocklab/monitor.hpp"

using namespace shocklab;

namespace {

ContractionConfig burgers_config() {
    static const ContractionConfig cfg = build_contraction_config(
        make_burgers(), ShockTriple{StateVector(1.0), StateVector(-1.0), 0.0});
    return cfg;
}

RunSeries synthetic_series(const std::vector<double>& t, const std::vector<double>& ea) {
    RunSeries s;
    s.t = t;
    s.Ea = ea;
    s.l2.assign(t.size(), 0.0);
    s.x.assign(t.size(), 0.0);
    s.xdot.assign(t.size(), 0.0);
    s.v_min.assign(t.size(), 0.0);
    s.v_max.assign(t.size(), 0.0);
    s.Dt.assign(t.size(), 0.0);
    s.dx = 0.01;
    s.sigma = 0.0;
    s.T = t.empty() ? 0.0 : t.back();
    return s;
}

} // namespace

TEST_CASE("boundary dissipation rate") {
    const auto burgers = make_burgers();
    const ContractionConfig cfg = burgers_config();

    // the reference shock itself dissipates nothing extra
    TracePair shock_traces{cfg.shock.left, cfg.shock.right, 2};
    CHECK(dissipation_check(burgers, cfg, shock_traces, cfg.shock.sigma) == 0.0);

    // a constant trace moving at its own drift speed: exact closed form -1
    TracePair t2{StateVector(2.0), StateVector(2.0), 2};
    const double v2 = shift_velocity(burgers, StateVector(2.0), cfg);
    CHECK(dissipation_check(burgers, cfg, t2, v2) == doctest::Approx(-1.0).epsilon(1e-12));

    // any constant state moving at its drift speed is non-amplifying
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
        const StateVector u(dist(rng));
        const TracePair tr{u, u, 2};
        CHECK(dissipation_check(burgers, cfg, tr, shift_velocity(burgers, u, cfg)) <= 1e-12);
    }
}

TEST_CASE("admissible 1-curve jumps out of O_a dissipate") {
    const auto burgers = make_burgers();
    const ContractionConfig cfg = burgers_config();
    const double eps_c0 = cfg.epsilon * cfg.C0;
    // traces (U-, S_{U-}(s)) moving at sigma(s) <= v, with U- inside O_a's ball
    for (double f : {-0.9, 0.0, 0.9}) {
        const StateVector um(1.0 + f * eps_c0);
        const ShockCurve c = shock_curve(burgers, um, ShockFamily::one_shock, 6.0, 121);
        for (const auto& p : c.points()) {
            if (p.sigma > cfg.v) continue;
            const TracePair tr{um, p.state, 2};
            CHECK(dissipation_check(burgers, cfg, tr, p.sigma) <= 1e-10);
        }
    }
}

TEST_CASE("contraction verdict") {
    const RunSeries good = synthetic_series({0, 1, 2, 3}, {1.0, 0.7, 0.5, 0.2});
    const ContractionVerdict g = contraction_verdict(good, 0.01, 3.0, 5.0);
    CHECK(g.pass);
    CHECK(g.max_violation == 0.0);

    const double budget = 5.0 * 0.01 * 4.0;
    const RunSeries bad =
        synthetic_series({0, 1, 2, 3}, {1.0, 0.5, 0.5 + 10.0 * budget, 0.4});
    const ContractionVerdict b = contraction_verdict(bad, 0.01, 3.0, 5.0);
    CHECK(!b.pass);
    CHECK(b.max_violation == doctest::Approx(10.0 * budget));

    CHECK_THROWS_AS(contraction_verdict(synthetic_series({}, {}), 0.01, 1.0, 5.0), Error);
}

TEST_CASE("drift growth fit") {
    // x(t) = t: exponent 1, must fail
    std::vector<double> t, ea;
    for (int i = 0; i <= 100; ++i) t.push_back(0.2 * i);
    ea.assign(t.size(), 0.0);
    RunSeries s = synthetic_series(t, ea);
    for (std::size_t i = 0; i < t.size(); ++i) s.x[i] = t[i];
    const DriftBoundVerdict v = drift_bound_check(s, 1.0);
    CHECK(!v.vacuous);
    CHECK(v.exponent == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(!v.pass);

    // everything under the displacement floor: vacuous pass with flag
    for (std::size_t i = 0; i < t.size(); ++i) s.x[i] = 0.001;
    const DriftBoundVerdict w = drift_bound_check(s, 1.0);
    CHECK(w.vacuous);
    CHECK(w.pass);
}

TEST_CASE("shifted L2 stability check") {
    RunSeries s = synthetic_series({0, 1, 2}, {1, 1, 1});
    s.l2 = {0.1, 0.09, 0.08};
    const L2Verdict ok = l2_stability_check(s, 0.1, 0.5, 0.5, 0.25);
    CHECK(ok.pass);
    CHECK(ok.bound == doctest::Approx(0.1 * 2.0 * 1.05)); // 1/sqrt(a) = 2

    s.l2 = {0.1, 5.0, 0.08}; // injected growth
    CHECK(!l2_stability_check(s, 0.1, 0.5, 0.5, 0.25).pass);
}

TEST_CASE("dissipation summary counts budget violations") {
    RunSeries s = synthetic_series({0, 1, 2, 3}, {1, 1, 1, 1});
    s.Dt = {0.0, -1.0, 1.0, 0.01};
    s.dx = 0.01;
    const DissipationSummary sum = dissipation_summary(s, 5.0);
    CHECK(sum.steps == 3);
    CHECK(sum.tolerance == doctest::Approx(0.05));
    CHECK(sum.violations == 1);
    CHECK(sum.worst == doctest::Approx(1.0));
}
