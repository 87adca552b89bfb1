#include "shocklab/drift.hpp"

#include <cmath>

#include "shocklab/numerics.hpp"

namespace shocklab {

TracePair interface_traces(const FieldSnapshot& field, double x, int stencil_skip) {
    if (stencil_skip < 0) fail(ErrorCode::config, "interface_traces: negative stencil skip");
    const Grid1D& g = field.grid;
    if (x <= g.x_min || x >= g.x_max)
        fail(ErrorCode::out_of_range, "interface_traces: position outside the grid");
    const int i = g.cell_of(x);
    const int il = i - (stencil_skip + 1);
    const int ir = i + (stencil_skip + 1);
    if (il < 0 || ir >= g.n_cells)
        fail(ErrorCode::out_of_range, "interface_traces: stencil leaves the grid");
    TracePair t;
    t.left_trace = field.cells[static_cast<std::size_t>(il)];
    t.right_trace = field.cells[static_cast<std::size_t>(ir)];
    t.stencil_skip = stencil_skip;
    return t;
}

double filippov_velocity(const SystemDescriptor& sys, const ContractionConfig& cfg,
                         const FieldSnapshot& field, double x, double window_h) {
    const Grid1D& g = field.grid;
    if (!(window_h > 0.0)) fail(ErrorCode::config, "filippov_velocity: window must be positive");
    if (x < g.x_min || x + window_h > g.x_max)
        fail(ErrorCode::out_of_range, "filippov_velocity: window leaves the grid");
    const double dx = g.dx();
    int i = g.cell_of(x);
    double acc = 0.0;
    double covered = 0.0;
    double pos = x;
    while (covered < window_h - 1e-14 * window_h && i < g.n_cells) {
        const double cell_right = g.left_edge(i) + dx;
        const double len = std::min(cell_right, x + window_h) - pos;
        acc += shift_velocity(sys, field.cells[static_cast<std::size_t>(i)], cfg) * len;
        covered += len;
        pos = cell_right;
        ++i;
    }
    return acc / window_h;
}

namespace {

/// min/max of V over the cells intersecting [x, x+h].
void window_range(const SystemDescriptor& sys, const ContractionConfig& cfg,
                  const FieldSnapshot& field, double x, double h, double& vmin,
                  double& vmax) {
    const Grid1D& g = field.grid;
    const int i0 = g.cell_of(x);
    const int i1 = g.cell_of(std::nextafter(x + h, x));
    for (int i = i0; i <= i1; ++i) {
        const double v = shift_velocity(sys, field.cells[static_cast<std::size_t>(i)], cfg);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
}

} // namespace

DriftStepAudit advance_drift(const SystemDescriptor& sys, const ContractionConfig& cfg,
                             const FieldSnapshot& field, double x, double dt,
                             double window_h) {
    DriftStepAudit audit;
    audit.v_min = std::numeric_limits<double>::infinity();
    audit.v_max = -std::numeric_limits<double>::infinity();

    const double k1 = filippov_velocity(sys, cfg, field, x, window_h);
    window_range(sys, cfg, field, x, window_h, audit.v_min, audit.v_max);
    const double x_mid = x + dt * k1;
    const double k2 = filippov_velocity(sys, cfg, field, x_mid, window_h);
    window_range(sys, cfg, field, x_mid, window_h, audit.v_min, audit.v_max);

    audit.x_new = x + 0.5 * dt * (k1 + k2);
    audit.xdot = 0.5 * (k1 + k2);
    return audit;
}

double characteristics_drift_lower_bound(double r, double eps, double t) {
    return std::sqrt(2.0 * r * eps) * std::pow(1.0 + 4.0 * t, 0.5 - r) / (2.0 * (1.0 - 2.0 * r));
}

CharacteristicsSeries characteristics_drift_burgers(double r, double eps, double T,
                                                    int n_steps) {
    if (!(r > 0.0 && r < 0.5))
        fail(ErrorCode::parameter, "characteristics_drift_burgers: need 0 < r < 1/2");
    if (eps < 0.0) fail(ErrorCode::parameter, "characteristics_drift_burgers: need eps >= 0");
    if (n_steps < 1) fail(ErrorCode::parameter, "characteristics_drift_burgers: need steps");

    const double c = std::sqrt(2.0 * r * eps);
    const double q = 0.5 + r;
    const auto u0 = [&](double x) { return 1.0 + c * std::pow(1.0 - x, -q); };
    const auto du0 = [&](double x) { return c * q * std::pow(1.0 - x, -q - 1.0); };

    // x' = u0(-y) - 1,  y' = (u0(-y) + 1) / (1 + 2 t u0'(-y))
    const auto rhs = [&](double t, double /*x*/, double y, double& xd, double& yd) {
        const double u = u0(-y);
        const double denom = 1.0 + 2.0 * t * du0(-y);
        if (denom <= 0.0)
            fail(ErrorCode::integration, "characteristics: characteristic map degenerated");
        xd = u - 1.0;
        yd = (u + 1.0) / denom;
    };

    CharacteristicsSeries out;
    out.t.reserve(static_cast<std::size_t>(n_steps) + 1);
    const double dt = T / n_steps;
    double t = 0.0, x = 0.0, y = 0.0;
    double k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y;

    out.t.push_back(0.0);
    out.x.push_back(0.0);
    out.y.push_back(0.0);
    out.xdot.push_back(c); // u0(0) - 1

    out.y_bound_ok = true;
    out.xdot_bound_ok = true;
    out.x_lower_bound_ok = true;
    out.worst_x_gap = std::numeric_limits<double>::infinity();

    for (int k = 0; k < n_steps; ++k) {
        rhs(t, x, y, k1x, k1y);
        rhs(t + 0.5 * dt, x + 0.5 * dt * k1x, y + 0.5 * dt * k1y, k2x, k2y);
        rhs(t + 0.5 * dt, x + 0.5 * dt * k2x, y + 0.5 * dt * k2y, k3x, k3y);
        rhs(t + dt, x + dt * k3x, y + dt * k3y, k4x, k4y);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        y += dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        t = (k + 1) * dt;

        double xd, yd;
        rhs(t, x, y, xd, yd);
        out.t.push_back(t);
        out.x.push_back(x);
        out.y.push_back(y);
        out.xdot.push_back(xd);

        if (y > 4.0 * t + 1e-12) out.y_bound_ok = false;
        if (xd < c * std::pow(1.0 + 4.0 * t, -q) - 1e-12) out.xdot_bound_ok = false;
        if (t >= 1.0) {
            const double gap = x - characteristics_drift_lower_bound(r, eps, t);
            out.worst_x_gap = std::min(out.worst_x_gap, gap);
            if (gap < 0.0) out.x_lower_bound_ok = false;
        }
    }
    if (!std::isfinite(out.worst_x_gap)) out.worst_x_gap = 0.0; // T < 1: nothing audited
    return out;
}

} // namespace shocklab
