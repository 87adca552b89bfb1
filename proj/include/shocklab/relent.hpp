#pragma once

#include <vector>

#include "shocklab/grid.hpp"
#include "shocklab/system.hpp"

namespace shocklab {

/// eta(U|V) = eta(U) - eta(V) - grad_eta(V).(U - V). Nonnegative; zero only
/// on the diagonal. U may sit in the extended domain, V must be interior.
double rel_entropy(const SystemDescriptor& sys, const StateVector& u, const StateVector& v);

/// F(U,V) = G(U) - G(V) - grad_eta(V).(A(U) - A(V)).
double rel_flux(const SystemDescriptor& sys, const StateVector& u, const StateVector& v);

/// Sampled equivalence constants between eta(U|V) and |U-V|^2:
/// C1 = min, C2 = max of the ratio over pairs (U in box, V in omega).
std::pair<double, double> comparability_constants(const SystemDescriptor& sys,
                                                  const std::vector<StateVector>& omega,
                                                  const DomainBox& box, int n_samples,
                                                  std::uint64_t seed = 0);

/// Two-piece weighted relative-entropy norm: reference U_L with weight 1 left
/// of the split, U_R with weight a right of it.
struct PseudoNormConfig {
    StateVector u_left;
    StateVector u_right;
    double a = 1.0;
    double split = 0.0;
};

void validate(const SystemDescriptor& sys, const PseudoNormConfig& cfg);

/// Midpoint-rule integral of the weighted relative entropy over the field.
/// The cell containing the split is divided exactly at the split position.
double pseudo_norm(const SystemDescriptor& sys, const FieldSnapshot& field,
                   const PseudoNormConfig& cfg);

/// L2 distance between the field and the step (U_L, U_R) placed at `split`.
double l2_distance_to_step(const FieldSnapshot& field, const StateVector& u_left,
                           const StateVector& u_right, double split);

} // namespace shocklab
