#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shocklab/hugoniot.hpp"
#include "shocklab/system.hpp"

namespace shocklab {

struct VelocityBand {
    double lo = 0.0;
    double hi = 0.0;
    double v = 0.0; // band midpoint
};

/// Velocity band (max(sigma, F(U_L,U_R)/eta(U_L|U_R)), lambda-(U_L)) for an
/// admissible 1-shock; v is its midpoint.
VelocityBand find_velocity_band(const SystemDescriptor& sys, const ShockTriple& shock);

struct SamplingSpec {
    int n_samples = 10000;
    std::uint64_t seed = 0;
};

struct BallConstants {
    double C0 = 0.0;
    double beta = 0.0;
    double worst_margin = 0.0; // worst relative margin at the accepted radius
};

/// Largest radius C0 (bisection to 1% relative) such that on the sampled
/// ball around U_L:  v < lambda-(U),
///   -F(U,U_L) + v eta(U|U_L) <= -beta eta(U|U_L),
///    F(U,U_R) - v eta(U|U_R) <= -beta eta(U|U_R),
/// with beta = half the worst relative margin found. Samples are
/// quasi-random interior points plus a deterministic boundary set.
BallConstants find_ball_constants(const SystemDescriptor& sys, const ShockTriple& shock,
                                  double v, const SamplingSpec& spec);

/// Membership in O_a = { U : eta(U|U_L) - a eta(U|U_R) <= 0 }.
bool oa_membership(const SystemDescriptor& sys, const StateVector& u,
                   const StateVector& u_left, const StateVector& u_right, double a);

/// max |U - U_L| over sampled members of O_a, located by bisection along
/// quasi-random rays from U_L (O_a is convex).
double oa_radius(const SystemDescriptor& sys, const StateVector& u_left,
                 const StateVector& u_right, double a, const SamplingSpec& spec);

struct AStarGrids {
    int n_s = 160;          // s-samples per curve in the master-inequality grid
    double s_max = 0.0;     // curve extent; 0 means 3x the anchor shock's s
    std::uint64_t seed = 0;
    int n_oa_rays = 128;    // rays for the O_a containment check
};

struct AStarResult {
    double epsilon = 0.0;
    double a = 0.0;       // returned weight: half the first passing value
    double a_star = 0.0;  // first passing value of the halving search
    double kappa = 0.0;   // sampled dissipation constant used for epsilon
    double C_lip = 0.0;   // sampled perturbation constant used for epsilon
    double worst_master = 0.0;
    int bases_used = 0;
};

/// Selects epsilon from the sampled smallness condition
/// C(eps C0 + (eps C0)^2) <= kappa/2, then halves a until the sampled O_a
/// fits in B(U_L, eps C0) and the shock-interaction inequality
///   -F(U-,U_L) + sigma_s eta(U-|U_L)
///       + a (F(S_{U-}(s),U_R) - sigma_s eta(S_{U-}(s)|U_R)) <= 0
/// holds at every bank grid point with sigma_s <= v. bank[0] must be the
/// 1-curve anchored at U_L; further curves provide bases near U_L.
AStarResult find_a_star(const SystemDescriptor& sys, const ShockTriple& shock, double v,
                        double C0, double beta, std::span<const ShockCurve> bank,
                        const AStarGrids& grids);

struct ConstantsAudit {
    std::uint64_t seed = 0;
    int n_ball_samples = 0;
    int n_oa_rays = 0;
    int n_bank_curves = 0;
    int n_s_grid = 0;
    double band_lo = 0.0, band_hi = 0.0;
    double worst_ball_margin = 0.0;
    double oa_radius = 0.0;
    double kappa = 0.0, C_lip = 0.0;
    double worst_master = 0.0;
    double a_star = 0.0;
};

/// The constructed contraction constants for one fixed extremal shock.
struct ContractionConfig {
    ShockTriple shock;   // (U_L, U_R, sigma)
    double v = 0.0;      // drift plateau, sigma < v < lambda-(U_L)
    double C0 = 0.0;     // plateau ball radius
    double beta = 0.0;   // dissipation margin on the ball
    double epsilon = 0.0;
    double a = 0.0;      // right-side weight of the pseudo-norm
    ConstantsAudit audit;
};

/// Full pipeline: velocity band, ball constants, curve bank, a-search.
ContractionConfig build_contraction_config(const SystemDescriptor& sys,
                                           const ShockTriple& shock,
                                           const SamplingSpec& spec = {},
                                           const AStarGrids& grids = {});

/// Drift velocity field:
///   V(U) = v - ([-F(U,U_L)+v eta(U|U_L)]_+ + a [F(U,U_R)-v eta(U|U_R)]_+)
///              / (eta(U|U_L) - a eta(U|U_R)),
/// with the numerator clamped to zero on B(U_L, C0), where V = v.
double shift_velocity(const SystemDescriptor& sys, const StateVector& u,
                      const ContractionConfig& cfg);

/// Re-check the config invariants with a fresh seed (sampled audit).
bool recheck_contraction_config(const SystemDescriptor& sys, const ContractionConfig& cfg,
                                std::uint64_t seed);

} // namespace shocklab
