#pragma once

#include <vector>

#include "shocklab/constants.hpp"
#include "shocklab/drift.hpp"

namespace shocklab {

/// Per-run series: weighted norm, shifted L2 distance, drift audit.
/// Column order matches the run CSV: t, Ea, l2_dist, x, xdot, vmin, vmax, Dt.
struct RunSeries {
    std::vector<double> t;
    std::vector<double> Ea;
    std::vector<double> l2;
    std::vector<double> x;
    std::vector<double> xdot;
    std::vector<double> v_min;
    std::vector<double> v_max;
    std::vector<double> Dt;

    double dx = 0.0;    // grid spacing of the run
    double sigma = 0.0; // reference shock speed
    double T = 0.0;     // final time
};

/// Boundary dissipation rate of the weighted norm for traces (U-, U+) moving
/// at xdot:
///   D = xdot [eta(U-|U_L) - a eta(U+|U_R)] - F(U-,U_L) + a F(U+,U_R).
double dissipation_check(const SystemDescriptor& sys, const ContractionConfig& cfg,
                         const TracePair& traces, double xdot);

struct ContractionVerdict {
    bool pass = false;
    double max_violation = 0.0;
    double tolerance = 0.0;
};

/// max_t [Ea(t) - min_{s<=t} Ea(s)] against the budget C_tol * dx * (1 + T).
ContractionVerdict contraction_verdict(const RunSeries& series, double dx, double T,
                                       double c_tol = 5.0);

struct DriftBoundVerdict {
    double exponent = 0.0;
    double constant = 0.0; // exp(intercept) of the log-log fit
    bool pass = false;
    bool vacuous = false;  // every point below the displacement floor
    int n_points = 0;
};

/// Log-log fit of |x(t) - sigma t| vs t on t in [1, T], skipping points with
/// displacement below 10 dx; pass iff the exponent is <= 0.55.
DriftBoundVerdict drift_bound_check(const RunSeries& series, double u0_distance);

struct L2Verdict {
    bool pass = false;
    double ratio = 0.0;
    double bound = 0.0;
    double max_distance = 0.0;
};

/// max_t ||U(t,.+x(t)) - S|| <= sqrt(C2 / (C1 min(1,a))) * ||U0 - S|| * 1.05.
L2Verdict l2_stability_check(const RunSeries& series, double u0_distance, double c1,
                             double c2, double a);

struct DissipationSummary {
    int violations = 0;
    int steps = 0;
    double worst = 0.0;
    double tolerance = 0.0;
};

/// Count steps with D above the per-step budget c_tol * dx.
DissipationSummary dissipation_summary(const RunSeries& series, double c_tol = 5.0);

} // namespace shocklab
