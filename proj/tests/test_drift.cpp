#include "doctest.h"

#include <cmath>

#include "shocklab/drift.hpp"
#include "shocklab/solver.hpp"

using namespace shocklab;

namespace {

FieldSnapshot burgers_step_field(int n, double jump) {
    FieldSnapshot f;
    f.grid = {-2.0, 2.0, n};
    f.cells.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        f.cells[static_cast<std::size_t>(i)] = StateVector(f.grid.center(i) < jump ? 1.0 : -1.0);
    return f;
}

ContractionConfig burgers_config() {
    static const ContractionConfig cfg = build_contraction_config(
        make_burgers(), ShockTriple{StateVector(1.0), StateVector(-1.0), 0.0});
    return cfg;
}

} // namespace

TEST_CASE("interface traces") {
    FieldSnapshot f = burgers_step_field(64, 0.0);
    const TracePair t = interface_traces(f, 1e-9, 2);
    CHECK(t.left_trace[0] == 1.0);
    CHECK(t.right_trace[0] == -1.0);

    // smear the jump over four cells; skip 2 still reads clean values
    const int j = f.grid.cell_of(0.0);
    f.cells[j - 1] = StateVector(0.6);
    f.cells[j] = StateVector(0.1);
    f.cells[j + 1] = StateVector(-0.4);
    f.cells[j + 2] = StateVector(-0.9);
    const TracePair s = interface_traces(f, f.grid.center(j), 2);
    CHECK(s.left_trace[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.right_trace[0] == doctest::Approx(-1.0).epsilon(1e-12));

    CHECK_THROWS_AS(interface_traces(f, -1.999, 2), Error);
    CHECK_THROWS_AS(interface_traces(f, 0.0, 200), Error);
}

TEST_CASE("windowed velocity") {
    const auto burgers = make_burgers();
    const ContractionConfig cfg = burgers_config();
    const double dx = 4.0 / 64.0;
    const double h = 4.0 * dx;

    // constant field: the window average is Vexactly
    FieldSnapshot f = burgers_step_field(64, 10.0); // all left-state
    CHECK(filippov_velocity(burgers, cfg, f, 0.0, h) == doctest::Approx(cfg.v).epsilon(1e-14));

    // step field: convex combination at the straddle fraction
    f = burgers_step_field(64, 0.0);
    const double theta = 0.25;
    const double x = -theta * h; // theta of the window sees U_L
    const double expect = theta * cfg.v + (1.0 - theta) * (-2.0 / 3.0);
    CHECK(filippov_velocity(burgers, cfg, f, x, h) == doctest::Approx(expect).epsilon(1e-12));

    CHECK_THROWS_AS(filippov_velocity(burgers, cfg, f, 1.95, h), Error);
}

TEST_CASE("drift slides at a steady shock") {
    const auto burgers = make_burgers();
    const ContractionConfig cfg = burgers_config();
    const FieldSnapshot f = burgers_step_field(256, 0.0); // static for the exact flux
    const double dx = f.grid.dx();
    const double h = 4.0 * dx;
    const double dt = 0.45 * dx / 2.0;

    double x = 0.0;
    for (int k = 0; k < 400; ++k) {
        const DriftStepAudit a = advance_drift(burgers, cfg, f, x, dt, h);
        CHECK(a.xdot >= a.v_min - 1e-8);
        CHECK(a.xdot <= a.v_max + 1e-8);
        x = a.x_new;
        CHECK(std::abs(x) <= h + 2.0 * dx);
    }
}

TEST_CASE("drift over a constant field moves at the plateau speed") {
    const auto burgers = make_burgers();
    const ContractionConfig cfg = burgers_config();
    const FieldSnapshot f = burgers_step_field(64, 10.0);
    const DriftStepAudit a = advance_drift(burgers, cfg, f, -1.0, 1e-3, 0.25);
    CHECK(a.xdot == doctest::Approx(cfg.v).epsilon(1e-13));
    CHECK(a.v_min == doctest::Approx(cfg.v));
    CHECK(a.v_max == doctest::Approx(cfg.v));
}

TEST_CASE("exact characteristics for the perturbed steady shock") {
    const CharacteristicsSeries s = characteristics_drift_burgers(0.1, 0.01, 10.0, 4000);
    CHECK(s.t.front() == 0.0);
    CHECK(s.x.front() == 0.0);
    CHECK(s.y.front() == 0.0);
    CHECK(s.xdot.front() == doctest::Approx(std::sqrt(0.002)).epsilon(1e-14));

    // the chain bounds from the construction hold along the series
    CHECK(s.y_bound_ok);
    CHECK(s.xdot_bound_ok);

    // drift is increasing and the map stays monotone
    for (std::size_t i = 1; i < s.x.size(); ++i) {
        CHECK(s.x[i] >= s.x[i - 1]);
        CHECK(s.y[i] >= s.y[i - 1]);
    }

    // fourth-order convergence: doubling the steps barely moves the endpoint
    const CharacteristicsSeries s2 = characteristics_drift_burgers(0.1, 0.01, 10.0, 8000);
    CHECK(std::abs(s.x.back() - s2.x.back()) < 1e-8);

    CHECK_THROWS_AS(characteristics_drift_burgers(0.6, 0.01, 1.0, 100), Error);
    CHECK_THROWS_AS(characteristics_drift_burgers(0.1, -1.0, 1.0, 100), Error);
}
