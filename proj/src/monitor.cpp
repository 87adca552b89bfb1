#include "shocklab/monitor.hpp"

#include <cmath>

#include "shocklab/numerics.hpp"
#include "shocklab/relent.hpp"

namespace shocklab {

double dissipation_check(const SystemDescriptor& sys, const ContractionConfig& cfg,
                         const TracePair& traces, double xdot) {
    const double eta_l = rel_entropy(sys, traces.left_trace, cfg.shock.left);
    const double eta_r = rel_entropy(sys, traces.right_trace, cfg.shock.right);
    return xdot * (eta_l - cfg.a * eta_r) - rel_flux(sys, traces.left_trace, cfg.shock.left) +
           cfg.a * rel_flux(sys, traces.right_trace, cfg.shock.right);
}

ContractionVerdict contraction_verdict(const RunSeries& series, double dx, double T,
                                       double c_tol) {
    if (series.Ea.empty()) fail(ErrorCode::config, "contraction_verdict: empty series");
    ContractionVerdict v;
    v.tolerance = c_tol * dx * (1.0 + T);
    double running_min = series.Ea.front();
    for (const double e : series.Ea) {
        v.max_violation = std::max(v.max_violation, e - running_min);
        running_min = std::min(running_min, e);
    }
    v.pass = v.max_violation <= v.tolerance;
    return v;
}

DriftBoundVerdict drift_bound_check(const RunSeries& series, double u0_distance) {
    (void)u0_distance;
    DriftBoundVerdict v;
    const double floor = 10.0 * series.dx;
    std::vector<double> lt, ld;
    for (std::size_t i = 0; i < series.t.size(); ++i) {
        const double t = series.t[i];
        if (t < 1.0) continue;
        const double disp = std::abs(series.x[i] - series.sigma * t);
        if (disp < floor) continue;
        lt.push_back(std::log(t));
        ld.push_back(std::log(disp));
    }
    v.n_points = static_cast<int>(lt.size());
    if (v.n_points < 2) {
        v.vacuous = true; // every displacement below the noise floor
        v.pass = true;
        return v;
    }
    const num::LineFit fit = num::fit_line(lt, ld);
    v.exponent = fit.slope;
    v.constant = std::exp(fit.intercept);
    v.pass = v.exponent <= 0.55;
    return v;
}

L2Verdict l2_stability_check(const RunSeries& series, double u0_distance, double c1,
                             double c2, double a) {
    L2Verdict v;
    if (!(c1 > 0.0) || !(c2 >= c1) || !(a > 0.0))
        fail(ErrorCode::config, "l2_stability_check: bad comparability constants");
    for (const double d : series.l2) v.max_distance = std::max(v.max_distance, d);
    v.bound = std::sqrt(c2 / (c1 * std::min(1.0, a))) * u0_distance * 1.05;
    v.ratio = v.bound > 0.0 ? v.max_distance / v.bound : 0.0;
    v.pass = v.max_distance <= v.bound || v.max_distance == 0.0;
    return v;
}

DissipationSummary dissipation_summary(const RunSeries& series, double c_tol) {
    DissipationSummary s;
    s.tolerance = c_tol * series.dx;
    // row 0 carries the initial state, not a step
    for (std::size_t i = 1; i < series.Dt.size(); ++i) {
        ++s.steps;
        s.worst = std::max(s.worst, series.Dt[i]);
        if (series.Dt[i] > s.tolerance) ++s.violations;
    }
    return s;
}

} // namespace shocklab
