#pragma once

#include <cstdint>

#include "shocklab/grid.hpp"
#include "shocklab/hugoniot.hpp"
#include "shocklab/system.hpp"

namespace shocklab {

enum class FluxScheme { godunov_exact, hll, hllc };
enum class BoundaryKind { farfield, periodic };

/// Default scheme per system: exact Godunov (m=1), HLL (m=2), HLLC (m=3).
FluxScheme default_scheme(const SystemDescriptor& sys);

struct SolverConfig {
    double cfl = 0.45;
    BoundaryKind boundary = BoundaryKind::farfield;
    StateVector left_bc;  // far-field ghost states
    StateVector right_bc;
    FluxScheme scheme = FluxScheme::godunov_exact;
    double end_time = 1.0;
    bool check_entropy = false; // assert non-increasing total entropy (periodic)
};

/// Numerical interface flux; consistent (flux(U,U) = A(U)) and vacuum-safe.
StateVector riemann_flux(const SystemDescriptor& sys, FluxScheme scheme,
                         const StateVector& left, const StateVector& right);

/// Largest |lambda| over the cells (vacuum cells contribute 0).
double max_wave_speed(const SystemDescriptor& sys, const FieldSnapshot& field);

double cfl_dt(const SystemDescriptor& sys, const FieldSnapshot& field, double cfl);

/// One conservative update over time dt.
FieldSnapshot step(const SystemDescriptor& sys, const FieldSnapshot& field,
                   const SolverConfig& cfg, double dt);

enum class InitialKind { pure_shock, shock_plus_bump, prop14, random_perturbation };

struct InitialSpec {
    InitialKind kind = InitialKind::pure_shock;
    double offset = 0.0;    // pure_shock: jump position
    double amplitude = 0.0; // bump or random-noise amplitude
    double width = 0.0;     // bump support width
    double center = 0.0;    // bump center
    double r = 0.0;         // prop14 tail exponent parameter
    double eps = 0.0;       // prop14 squared L2 perturbation size
    std::uint64_t seed = 0; // random_perturbation
    double support_lo = 0.0;
    double support_hi = 0.0;
};

/// Cell averages (5-point Gauss per cell) of the requested profile built
/// around the reference shock placed at x = 0 (or `offset` for pure_shock).
FieldSnapshot initial_data(const SystemDescriptor& sys, const ShockTriple& shock,
                           const Grid1D& grid, const InitialSpec& spec);

} // namespace shocklab
