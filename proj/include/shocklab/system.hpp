#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "shocklab/state.hpp"

namespace shocklab {

/// Dense row-major m x m matrix, m <= 3. Used for flux Jacobians.
struct SmallMatrix {
    std::array<double, 9> a{};
    int m = 0;
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i * m + j)]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i * m + j)]; }
};

/// One conservation-law system: flux A, entropy eta, entropy flux G,
/// extremal eigenvalues, and the state-domain predicates.
///
/// Domains: `interior` is the open set where everything is smooth,
/// `extended` additionally admits the vacuum point, where A, eta, G are
/// extended by continuity and gradients/eigenvalues are refused.
struct SystemDescriptor {
    std::string name;
    int dim = 1;

    std::function<StateVector(const StateVector&)> flux;
    std::function<SmallMatrix(const StateVector&)> flux_jacobian;
    std::function<double(const StateVector&)> entropy;
    std::function<StateVector(const StateVector&)> entropy_grad;
    std::function<double(const StateVector&)> entropy_flux;
    std::function<std::pair<double, double>(const StateVector&)> eigenvalues;

    std::function<bool(const StateVector&)> interior;
    std::function<bool(const StateVector&)> extended;
    std::function<bool(const StateVector&)> vacuum;

    // Primitive <-> conserved maps used by boxes, initial data and reports.
    std::function<StateVector(const StateVector&)> to_primitive;
    std::function<StateVector(const StateVector&)> from_primitive;
};

/// Pressure law for the isentropic system. S is the entropy primitive with
/// S'' = P'(rho)/rho; dS its derivative.
struct PressureLaw {
    std::string name;
    std::function<double(double)> P;
    std::function<double(double)> dP;
    std::function<double(double)> S;
    std::function<double(double)> dS;
};

/// P(rho) = rho^2 with S(rho) = rho^2, so that S(rho|r) = (rho - r)^2.
PressureLaw pressure_rho2();

/// P(rho) = rho^gamma with S normalized by S(1) = S'(1) = 0.
PressureLaw pressure_power(double gamma);

SystemDescriptor make_burgers();
SystemDescriptor make_isentropic(const PressureLaw& law);
SystemDescriptor make_euler(double gamma);

/// System with the same states and entropy but negated flux (x -> -x).
/// Exchanges the 1- and n-shock families.
SystemDescriptor reflected(const SystemDescriptor& sys);

/// Build a system by name: "burgers", "isentropic" (pressure "rho2" or
/// "power" with gamma), "euler" (gamma).
SystemDescriptor make_system(const std::string& name, const std::string& pressure,
                             double gamma);

/// Axis-aligned bounds on the primitive variables. Defines the bounded
/// convex working set for a run; contains vacuum when lo[0] <= 0.
struct DomainBox {
    int dim = 1;
    std::array<double, 3> lo{0, 0, 0};
    std::array<double, 3> hi{0, 0, 0};

    bool contains_primitive(const StateVector& p) const {
        for (int i = 0; i < dim; ++i)
            if (p[i] < lo[i] || p[i] > hi[i]) return false;
        return true;
    }
};

bool box_contains(const SystemDescriptor& sys, const DomainBox& box, const StateVector& u);

/// Quasi-random conserved states inside box and the system's extended domain.
std::vector<StateVector> sample_box(const SystemDescriptor& sys, const DomainBox& box,
                                    int count, std::uint64_t seed);

struct EntropyQuantities {
    double eta = 0.0;
    StateVector grad;
    double flux = 0.0;
};

/// A(U) for U in the extended domain.
StateVector flux_at(const SystemDescriptor& sys, const StateVector& u);

/// (eta, grad eta, G) at an interior state; vacuum input is refused.
EntropyQuantities entropy_quantities(const SystemDescriptor& sys, const StateVector& u);

/// (lambda-, lambda+) at an interior state; vacuum input is refused.
std::pair<double, double> extremal_eigenvalues(const SystemDescriptor& sys,
                                               const StateVector& u);

struct CompatibilityReport {
    double max_residual = 0.0;
    bool pass = false;
    double threshold = 0.0;
    StateVector worst_state;
    int samples = 0;
};

/// Central-difference audit of the entropy-flux relation
/// dG_j = sum_i d_i(eta) dA_i_j at the given interior states.
CompatibilityReport compatibility_check(const SystemDescriptor& sys,
                                        const std::vector<StateVector>& samples,
                                        double threshold = 1e-7);

/// Minimum eigenvalue of the entropy Hessian (central differences of the
/// gradient); positive at interior states of a strictly convex entropy.
double entropy_hessian_min_eig(const SystemDescriptor& sys, const StateVector& u);

} // namespace shocklab
