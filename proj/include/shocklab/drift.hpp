#pragma once

#include <vector>

#include "shocklab/constants.hpp"
#include "shocklab/grid.hpp"

namespace shocklab {

/// One-sided cell traces around a position, skipping the smeared layer.
struct TracePair {
    StateVector left_trace;
    StateVector right_trace;
    int stencil_skip = 2;
};

/// Trace cells are the ones stencil_skip+1 positions away from the cell
/// containing x, on each side.
TracePair interface_traces(const FieldSnapshot& field, double x, int stencil_skip = 2);

/// Cell-average quadrature of V(U) over the one-sided window [x, x+window_h].
double filippov_velocity(const SystemDescriptor& sys, const ContractionConfig& cfg,
                         const FieldSnapshot& field, double x, double window_h);

struct DriftStepAudit {
    double x_new = 0.0;
    double xdot = 0.0;  // realized (x_new - x)/dt
    double v_min = 0.0; // min of V over the cells seen by the two stages
    double v_max = 0.0;
};

/// Heun update of the drift position with the windowed velocity.
DriftStepAudit advance_drift(const SystemDescriptor& sys, const ContractionConfig& cfg,
                             const FieldSnapshot& field, double x, double dt,
                             double window_h);

/// Time series of the drift and its per-step audit values.
struct DriftTrajectory {
    std::vector<double> times;
    std::vector<double> x;
    std::vector<double> xdot;
    std::vector<double> v_min;
    std::vector<double> v_max;
    std::vector<TracePair> traces;
    std::vector<double> dissipation;
};

/// Exact-characteristics drift for the steady Burgers shock (1,-1) with the
/// algebraic-tail initial profile u0 = 1 + sqrt(2 r eps) (1-x)^(-1/2-r) left
/// of the jump. Integrates
///   x' = u0(-y) - 1,   y' = (u0(-y) + 1) / (1 + 2 t u0'(-y))
/// with classical RK4. Audit flags record whether the chain bounds
///   y <= 4t,  x' >= sqrt(2 r eps) (1+4t)^(-1/2-r)
/// and the closed-form drift lower bound
///   x(t) >= sqrt(2 r eps) (1+4t)^(1/2-r) / (2(1-2r))   (t >= 1)
/// held along the series.
struct CharacteristicsSeries {
    std::vector<double> t;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> xdot;
    bool y_bound_ok = false;
    bool xdot_bound_ok = false;
    bool x_lower_bound_ok = false; // the closed-form bound for t >= 1
    double worst_x_gap = 0.0;      // min over t>=1 of x(t) - bound(t)
};

CharacteristicsSeries characteristics_drift_burgers(double r, double eps, double T,
                                                    int n_steps);

/// The closed-form lower bound checked by the series audit.
double characteristics_drift_lower_bound(double r, double eps, double t);

} // namespace shocklab
