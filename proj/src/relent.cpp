#include "shocklab/relent.hpp"

#include <cmath>

#include "shocklab/numerics.hpp"

namespace shocklab {

namespace {

void require_args(const SystemDescriptor& sys, const StateVector& u, const StateVector& v,
                  const char* op) {
    require_finite(u, op);
    require_finite(v, op);
    if (!sys.extended(u))
        fail(ErrorCode::invalid_state, std::string(op) + ": U outside the extended domain");
    if (sys.vacuum(v)) fail(ErrorCode::vacuum_gradient, std::string(op) + ": V at vacuum");
    if (!sys.interior(v))
        fail(ErrorCode::invalid_state, std::string(op) + ": V outside the interior domain");
}

} // namespace

double rel_entropy(const SystemDescriptor& sys, const StateVector& u, const StateVector& v) {
    require_args(sys, u, v, "rel_entropy");
    const double raw =
        sys.entropy(u) - sys.entropy(v) - dot(sys.entropy_grad(v), u - v);
    // convexity makes this nonnegative; absorb roundoff on the diagonal
    if (raw < 0.0 && raw > -1e-10) return 0.0;
    return raw;
}

double rel_flux(const SystemDescriptor& sys, const StateVector& u, const StateVector& v) {
    require_args(sys, u, v, "rel_flux");
    return sys.entropy_flux(u) - sys.entropy_flux(v) -
           dot(sys.entropy_grad(v), sys.flux(u) - sys.flux(v));
}

std::pair<double, double> comparability_constants(const SystemDescriptor& sys,
                                                  const std::vector<StateVector>& omega,
                                                  const DomainBox& box, int n_samples,
                                                  std::uint64_t seed) {
    if (omega.empty()) fail(ErrorCode::config, "comparability_constants: empty reference set");
    for (const auto& v : omega)
        if (!sys.interior(v))
            fail(ErrorCode::config, "comparability_constants: reference outside the interior domain");
    if (n_samples < 1) fail(ErrorCode::config, "comparability_constants: need samples");

    const auto us = sample_box(sys, box, n_samples, seed);
    double diam2 = 0.0;
    for (int i = 0; i < box.dim; ++i)
        diam2 += (box.hi[i] - box.lo[i]) * (box.hi[i] - box.lo[i]);
    // near-diagonal pairs are cancellation noise, not information
    const double floor2 = 1e-4 * diam2;
    double c1 = std::numeric_limits<double>::infinity();
    double c2 = 0.0;
    std::size_t k = 0;
    for (const auto& u : us) {
        const StateVector& v = omega[k++ % omega.size()];
        const double d2 = dot(u - v, u - v);
        if (d2 < floor2) continue;
        const double ratio = rel_entropy(sys, u, v) / d2;
        c1 = std::min(c1, ratio);
        c2 = std::max(c2, ratio);
    }
    if (!(c1 > 0.0) || !std::isfinite(c2))
        fail(ErrorCode::hypothesis_violation, "comparability_constants: degenerate ratios");
    return {c1, c2};
}

void validate(const SystemDescriptor& sys, const PseudoNormConfig& cfg) {
    if (!(cfg.a > 0.0)) fail(ErrorCode::config, "pseudo_norm: weight must be positive");
    // equal references are allowed only in the homogeneous a = 1 reduction
    if (cfg.u_left == cfg.u_right && cfg.a != 1.0)
        fail(ErrorCode::config, "pseudo_norm: references must differ");
    if (!sys.interior(cfg.u_left) || !sys.interior(cfg.u_right))
        fail(ErrorCode::config, "pseudo_norm: references must be interior states");
}

double pseudo_norm(const SystemDescriptor& sys, const FieldSnapshot& field,
                   const PseudoNormConfig& cfg) {
    validate(sys, cfg);
    const Grid1D& g = field.grid;
    if (cfg.split < g.x_min || cfg.split > g.x_max)
        fail(ErrorCode::out_of_range, "pseudo_norm: split outside the grid");

    const double dx = g.dx();
    const int split_cell = g.cell_of(cfg.split);
    double total = 0.0;
    for (int i = 0; i < g.n_cells; ++i) {
        const StateVector& u = field.cells[static_cast<std::size_t>(i)];
        if (i < split_cell) {
            total += rel_entropy(sys, u, cfg.u_left) * dx;
        } else if (i > split_cell) {
            total += cfg.a * rel_entropy(sys, u, cfg.u_right) * dx;
        } else {
            const double left_len = cfg.split - g.left_edge(i);
            const double right_len = dx - left_len;
            total += rel_entropy(sys, u, cfg.u_left) * left_len;
            total += cfg.a * rel_entropy(sys, u, cfg.u_right) * right_len;
        }
    }
    return total;
}

double l2_distance_to_step(const FieldSnapshot& field, const StateVector& u_left,
                           const StateVector& u_right, double split) {
    const Grid1D& g = field.grid;
    if (split < g.x_min || split > g.x_max)
        fail(ErrorCode::out_of_range, "l2_distance_to_step: split outside the grid");
    const double dx = g.dx();
    const int split_cell = g.cell_of(split);
    double total = 0.0;
    for (int i = 0; i < g.n_cells; ++i) {
        const StateVector& u = field.cells[static_cast<std::size_t>(i)];
        if (i < split_cell) {
            total += dot(u - u_left, u - u_left) * dx;
        } else if (i > split_cell) {
            total += dot(u - u_right, u - u_right) * dx;
        } else {
            const double left_len = split - g.left_edge(i);
            total += dot(u - u_left, u - u_left) * left_len;
            total += dot(u - u_right, u - u_right) * (dx - left_len);
        }
    }
    return std::sqrt(total);
}

} // namespace shocklab
