#pragma once

#include <vector>

#include "shocklab/system.hpp"

namespace shocklab {

/// A discontinuity candidate: left/right states and a wave speed.
struct ShockTriple {
    StateVector left;
    StateVector right;
    double sigma = 0.0;
};

struct RhResidual {
    StateVector residual;          // A(R) - A(L) - sigma (R - L)
    double entropy_production = 0; // G(R) - G(L) - sigma (eta(R) - eta(L))
};

RhResidual rh_residual(const SystemDescriptor& sys, const StateVector& left,
                       const StateVector& right, double sigma);

/// Componentwise Rankine-Hugoniot residual scaled by the local flux size.
double rh_residual_scaled(const SystemDescriptor& sys, const ShockTriple& t);

enum class ShockFamily { one_shock, n_shock };

struct ShockCurvePoint {
    double s = 0.0;
    StateVector state;
    double sigma = 0.0;
};

/// One-parameter shock family s -> (S(s), sigma(s)) anchored at a base state,
/// parameterized by arc length in state space. The 1-family starts at
/// sigma(0) = lambda-(base) with decreasing speed; the n-family is built on
/// the reflected system and starts at lambda+(base) with increasing speed.
///
/// For m = 1 the curve is closed-form (S = base -/+ s); for systems the
/// points come from Newton continuation and `at` re-polishes interpolated
/// points back onto the Rankine-Hugoniot manifold.
class ShockCurve {
public:
    ShockCurve(SystemDescriptor sys, StateVector base, ShockFamily family,
               std::vector<ShockCurvePoint> points,
               std::vector<StateVector> tangents);

    const SystemDescriptor& system() const { return sys_; }
    const StateVector& base() const { return base_; }
    ShockFamily family() const { return family_; }
    const std::vector<ShockCurvePoint>& points() const { return points_; }
    double s_max() const { return points_.back().s; }

    /// Curve point at parameter s (Newton-polished for systems).
    ShockCurvePoint at(double s) const;

    /// Unit state-space tangent and d(sigma)/ds at parameter s, from the
    /// nullspace of the linearized Rankine-Hugoniot system.
    std::pair<StateVector, double> tangent_sigma_prime(double s) const;

private:
    SystemDescriptor sys_;
    StateVector base_;
    ShockFamily family_;
    std::vector<ShockCurvePoint> points_;
    std::vector<StateVector> tangents_; // stored unit tangents at the samples
};

/// Build the shock family from `base` out to arc length s_max with n_points
/// samples (including s = 0). Throws curve_continuation on Newton failure,
/// reporting the last good s.
ShockCurve shock_curve(const SystemDescriptor& sys, const StateVector& base,
                       ShockFamily family, double s_max, int n_points);

struct CurveAuditRow {
    double s = 0.0;
    double sigma = 0.0;
    double liu_margin = 0.0;        // family-signed -sigma' (1-family) or sigma'
    double strengthen_margin = 0.0; // d/ds eta(base | S(s))
};

struct LiuStrengthenReport {
    bool liu_pass = false;
    bool strengthen_pass = false;
    double min_liu_margin = 0.0;
    double min_strengthen_margin = 0.0;
    std::vector<CurveAuditRow> rows;
};

/// Finite-difference audit of speed monotonicity and of the growth of
/// eta(base | S(s)) along the sampled curve.
LiuStrengthenReport liu_strengthen_check(const SystemDescriptor& sys, const ShockCurve& curve);

struct DissipationIdentity {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
};

/// For a point S(s) on a 1-curve and any interior V:
///   F(S(s),V) - sigma(s) eta(S(s)|V)
///     = F(base,V) - sigma(s) eta(base|V) + int_0^s sigma'(t) eta(base|S(t)) dt.
DissipationIdentity lax_dissipation_identity(const ShockCurve& curve, double s,
                                             const StateVector& v, double quad_tol = 1e-10);

/// Convenience overload building the 1-curve from `base` out to s.
DissipationIdentity lax_dissipation_identity(const SystemDescriptor& sys,
                                             const StateVector& base, double s,
                                             const StateVector& v);

/// Inequality form for an arbitrary admissible discontinuity:
///   F(R,V) - sigma eta(R|V) <= F(L,V) - sigma eta(L|V).
struct DissipationInequality {
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
};

DissipationInequality lax_dissipation_inequality(const SystemDescriptor& sys,
                                                 const ShockTriple& triple,
                                                 const StateVector& v, double tol = 1e-12);

struct DipernaResult {
    double D = 0.0;          // F(S(s),S(s0)) - sigma(s) eta(S(s)|S(s0))
    double D_integral = 0.0; // integral form along the curve
    double kappa = 0.0;      // sampled two-regime dissipation constant
    double delta = 0.0;      // regime-splitting parameter for kappa
};

/// Dissipation between two points of the same curve, computed directly and
/// through the curve integral, with a sampled (kappa, delta) estimate for
///   D <= -kappa |sigma(s)-sigma(s0)|^2   (|s-s0| <= delta)
///   D <= -kappa |sigma(s)-sigma(s0)|     (|s-s0| >= delta).
DipernaResult diperna_dissipation(const ShockCurve& curve, double s, double s0,
                                  double quad_tol = 1e-10);

} // namespace shocklab
