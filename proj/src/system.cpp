#include "shocklab/system.hpp"

#include <cmath>

#include "shocklab/numerics.hpp"

namespace shocklab {

namespace {

constexpr double kFdStep = 1e-5;     // central differences for Hessian audits
constexpr double kCompatStep = 1e-4; // compatibility audit uses a 4th-order
                                     // central stencil; the 2nd-order one at
                                     // step 1e-5 cannot reach the thresholds
                                     // for the log-based entropy fluxes

void require_extended(const SystemDescriptor& sys, const StateVector& u, const char* op) {
    require_finite(u, op);
    if (!sys.extended(u))
        fail(ErrorCode::invalid_state, std::string(op) + ": state outside the extended domain");
}

void require_interior(const SystemDescriptor& sys, const StateVector& u, const char* op) {
    require_finite(u, op);
    if (sys.vacuum(u))
        fail(ErrorCode::vacuum_gradient, std::string(op) + ": vacuum state");
    if (!sys.interior(u))
        fail(ErrorCode::invalid_state, std::string(op) + ": state outside the interior domain");
}

} // namespace

PressureLaw pressure_rho2() {
    PressureLaw law;
    law.name = "rho2";
    law.P = [](double rho) { return rho * rho; };
    law.dP = [](double rho) { return 2.0 * rho; };
    law.S = [](double rho) { return rho * rho; };
    law.dS = [](double rho) { return 2.0 * rho; };
    return law;
}

PressureLaw pressure_power(double gamma) {
    if (!(gamma > 1.0)) fail(ErrorCode::parameter, "pressure_power: gamma must exceed 1");
    PressureLaw law;
    law.name = "power";
    law.P = [gamma](double rho) { return std::pow(rho, gamma); };
    law.dP = [gamma](double rho) { return gamma * std::pow(rho, gamma - 1.0); };
    // S'' = P'/rho with S(1) = S'(1) = 0.
    law.S = [gamma](double rho) {
        return (std::pow(rho, gamma) - gamma * rho + gamma - 1.0) / (gamma - 1.0);
    };
    law.dS = [gamma](double rho) {
        return gamma * (std::pow(rho, gamma - 1.0) - 1.0) / (gamma - 1.0);
    };
    return law;
}

SystemDescriptor make_burgers() {
    SystemDescriptor s;
    s.name = "burgers";
    s.dim = 1;
    s.flux = [](const StateVector& u) { return StateVector(u[0] * u[0]); };
    s.flux_jacobian = [](const StateVector& u) {
        SmallMatrix j;
        j.m = 1;
        j(0, 0) = 2.0 * u[0];
        return j;
    };
    s.entropy = [](const StateVector& u) { return 0.5 * u[0] * u[0]; };
    s.entropy_grad = [](const StateVector& u) { return StateVector(u[0]); };
    s.entropy_flux = [](const StateVector& u) { return 2.0 / 3.0 * u[0] * u[0] * u[0]; };
    s.eigenvalues = [](const StateVector& u) {
        return std::make_pair(2.0 * u[0], 2.0 * u[0]);
    };
    s.interior = [](const StateVector&) { return true; };
    s.extended = [](const StateVector&) { return true; };
    s.vacuum = [](const StateVector&) { return false; };
    s.to_primitive = [](const StateVector& u) { return u; };
    s.from_primitive = [](const StateVector& p) { return p; };
    return s;
}

SystemDescriptor make_isentropic(const PressureLaw& law) {
    SystemDescriptor s;
    s.name = "isentropic." + law.name;
    s.dim = 2;
    const auto P = law.P;
    const auto dP = law.dP;
    const auto S = law.S;
    const auto dS = law.dS;

    s.vacuum = [](const StateVector& u) { return u[0] == 0.0; };
    s.interior = [](const StateVector& u) { return u[0] > 0.0; };
    s.extended = [](const StateVector& u) {
        return u[0] > 0.0 || (u[0] == 0.0 && u[1] == 0.0);
    };

    s.flux = [P](const StateVector& u) {
        if (u[0] == 0.0) return StateVector(0.0, P(0.0));
        const double vel = u[1] / u[0];
        return StateVector(u[1], u[1] * vel + P(u[0]));
    };
    s.flux_jacobian = [dP](const StateVector& u) {
        SmallMatrix j;
        j.m = 2;
        const double vel = u[1] / u[0];
        j(0, 0) = 0.0;
        j(0, 1) = 1.0;
        j(1, 0) = dP(u[0]) - vel * vel;
        j(1, 1) = 2.0 * vel;
        return j;
    };
    s.entropy = [S](const StateVector& u) {
        if (u[0] == 0.0) return S(0.0); // continuity extension at vacuum
        return 0.5 * u[1] * u[1] / u[0] + S(u[0]);
    };
    s.entropy_grad = [dS](const StateVector& u) {
        const double vel = u[1] / u[0];
        return StateVector(-0.5 * vel * vel + dS(u[0]), vel);
    };
    s.entropy_flux = [dS](const StateVector& u) {
        if (u[0] == 0.0) return 0.0;
        const double vel = u[1] / u[0];
        return 0.5 * u[1] * vel * vel + u[1] * dS(u[0]);
    };
    s.eigenvalues = [dP](const StateVector& u) {
        const double vel = u[1] / u[0];
        const double c = std::sqrt(dP(u[0]));
        return std::make_pair(vel - c, vel + c);
    };
    s.to_primitive = [](const StateVector& u) {
        const double vel = u[0] > 0.0 ? u[1] / u[0] : 0.0;
        return StateVector(u[0], vel);
    };
    s.from_primitive = [](const StateVector& p) {
        return StateVector(p[0], p[0] * p[1]);
    };
    return s;
}

SystemDescriptor make_euler(double gamma) {
    if (!(gamma > 1.0)) fail(ErrorCode::parameter, "make_euler: gamma must exceed 1");
    SystemDescriptor s;
    s.name = "euler";
    s.dim = 3;
    const double gm1 = gamma - 1.0;

    auto internal_energy = [](const StateVector& u) {
        return u[2] / u[0] - 0.5 * (u[1] / u[0]) * (u[1] / u[0]);
    };

    s.vacuum = [](const StateVector& u) { return u[0] == 0.0; };
    s.interior = [internal_energy](const StateVector& u) {
        return u[0] > 0.0 && internal_energy(u) > 0.0;
    };
    s.extended = [internal_energy](const StateVector& u) {
        if (u[0] == 0.0) return u[1] == 0.0 && u[2] == 0.0;
        return internal_energy(u) > 0.0;
    };

    s.flux = [gm1, internal_energy](const StateVector& u) {
        if (u[0] == 0.0) return StateVector(0.0, 0.0, 0.0);
        const double vel = u[1] / u[0];
        const double pres = gm1 * u[0] * internal_energy(u);
        return StateVector(u[1], u[1] * vel + pres, vel * (u[2] + pres));
    };
    s.flux_jacobian = [gamma, gm1](const StateVector& u) {
        SmallMatrix j;
        j.m = 3;
        const double vel = u[1] / u[0];
        const double En = u[2] / u[0];
        const double e = En - 0.5 * vel * vel;
        const double pres = gm1 * u[0] * e;
        j(0, 0) = 0.0;
        j(0, 1) = 1.0;
        j(0, 2) = 0.0;
        j(1, 0) = 0.5 * gm1 * vel * vel - vel * vel;
        j(1, 1) = (3.0 - gamma) * vel;
        j(1, 2) = gm1;
        j(2, 0) = vel * (0.5 * gm1 * vel * vel - (u[2] + pres) / u[0]);
        j(2, 1) = (u[2] + pres) / u[0] - gm1 * vel * vel;
        j(2, 2) = gamma * vel;
        return j;
    };
    s.entropy = [gm1, internal_energy](const StateVector& u) {
        if (u[0] == 0.0) return 0.0; // continuity extension at vacuum
        return gm1 * u[0] * std::log(u[0]) - u[0] * std::log(internal_energy(u));
    };
    s.entropy_grad = [gm1, internal_energy](const StateVector& u) {
        const double vel = u[1] / u[0];
        const double e = internal_energy(u);
        return StateVector(gm1 * (std::log(u[0]) + 1.0) - std::log(e) + 1.0 -
                               0.5 * vel * vel / e,
                           vel / e, -1.0 / e);
    };
    s.entropy_flux = [gm1, internal_energy](const StateVector& u) {
        if (u[0] == 0.0) return 0.0;
        return gm1 * u[1] * std::log(u[0]) - u[1] * std::log(internal_energy(u));
    };
    s.eigenvalues = [gamma, gm1, internal_energy](const StateVector& u) {
        const double vel = u[1] / u[0];
        const double c = std::sqrt(gamma * gm1 * internal_energy(u));
        return std::make_pair(vel - c, vel + c);
    };
    // primitives are (rho, u, e); boxes on e keep samples clear of the
    // degenerate zero-internal-energy boundary
    s.to_primitive = [internal_energy](const StateVector& u) {
        if (u[0] == 0.0) return StateVector(0.0, 0.0, 0.0);
        return StateVector(u[0], u[1] / u[0], internal_energy(u));
    };
    s.from_primitive = [](const StateVector& p) {
        return StateVector(p[0], p[0] * p[1], p[0] * (p[2] + 0.5 * p[1] * p[1]));
    };
    return s;
}

SystemDescriptor reflected(const SystemDescriptor& sys) {
    SystemDescriptor r = sys;
    r.name = sys.name + ".reflected";
    r.flux = [f = sys.flux](const StateVector& u) { return -1.0 * f(u); };
    r.flux_jacobian = [j = sys.flux_jacobian](const StateVector& u) {
        SmallMatrix m = j(u);
        for (auto& v : m.a) v = -v;
        return m;
    };
    r.entropy_flux = [g = sys.entropy_flux](const StateVector& u) { return -g(u); };
    r.eigenvalues = [e = sys.eigenvalues](const StateVector& u) {
        const auto [lm, lp] = e(u);
        return std::make_pair(-lp, -lm);
    };
    return r;
}

SystemDescriptor make_system(const std::string& name, const std::string& pressure,
                             double gamma) {
    if (name == "burgers") return make_burgers();
    if (name == "isentropic") {
        if (pressure == "rho2") return make_isentropic(pressure_rho2());
        if (pressure == "power") return make_isentropic(pressure_power(gamma));
        fail(ErrorCode::config, "unknown pressure law: " + pressure);
    }
    if (name == "euler") return make_euler(gamma);
    fail(ErrorCode::config, "unknown system: " + name);
}

bool box_contains(const SystemDescriptor& sys, const DomainBox& box, const StateVector& u) {
    if (!sys.extended(u)) return false;
    return box.contains_primitive(sys.to_primitive(u));
}

std::vector<StateVector> sample_box(const SystemDescriptor& sys, const DomainBox& box,
                                    int count, std::uint64_t seed) {
    std::vector<StateVector> out;
    out.reserve(static_cast<std::size_t>(count));
    const std::uint64_t off = 17 + seed * 104729ull;
    double h[3];
    std::uint64_t idx = 0;
    while (static_cast<int>(out.size()) < count && idx < 50ull * static_cast<std::uint64_t>(count) + 1000) {
        num::halton(off + idx++, box.dim, h);
        StateVector p = StateVector::zero(box.dim);
        for (int i = 0; i < box.dim; ++i) p[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * h[i];
        const StateVector u = sys.from_primitive(p);
        if (sys.extended(u)) out.push_back(u);
    }
    if (static_cast<int>(out.size()) < count)
        fail(ErrorCode::config, "sample_box: box has almost no overlap with the state domain");
    return out;
}

StateVector flux_at(const SystemDescriptor& sys, const StateVector& u) {
    require_extended(sys, u, "flux");
    return sys.flux(u);
}

EntropyQuantities entropy_quantities(const SystemDescriptor& sys, const StateVector& u) {
    require_interior(sys, u, "entropy_quantities");
    EntropyQuantities q;
    q.eta = sys.entropy(u);
    q.grad = sys.entropy_grad(u);
    q.flux = sys.entropy_flux(u);
    return q;
}

std::pair<double, double> extremal_eigenvalues(const SystemDescriptor& sys,
                                               const StateVector& u) {
    require_finite(u, "extremal_eigenvalues");
    if (sys.vacuum(u))
        fail(ErrorCode::undefined_eigenvalue, "extremal_eigenvalues: undefined at vacuum");
    if (!sys.interior(u))
        fail(ErrorCode::invalid_state, "extremal_eigenvalues: state outside the interior domain");
    return sys.eigenvalues(u);
}

CompatibilityReport compatibility_check(const SystemDescriptor& sys,
                                        const std::vector<StateVector>& samples,
                                        double threshold) {
    if (samples.empty()) fail(ErrorCode::config, "compatibility_check: empty sample list");
    CompatibilityReport rep;
    rep.threshold = threshold;
    rep.samples = static_cast<int>(samples.size());
    for (const auto& u : samples) {
        require_interior(sys, u, "compatibility_check");
        const StateVector grad = sys.entropy_grad(u);
        for (int j = 0; j < sys.dim; ++j) {
            const double h = kCompatStep;
            StateVector u1 = u, u2 = u, u3 = u, u4 = u;
            u1[j] += 2.0 * h;
            u2[j] += h;
            u3[j] -= h;
            u4[j] -= 2.0 * h;
            const auto d4 = [&](auto f) {
                return (-f(u1) + 8.0 * f(u2) - 8.0 * f(u3) + f(u4)) / (12.0 * h);
            };
            const double dG = d4(sys.entropy_flux);
            StateVector dA = StateVector::zero(sys.dim);
            {
                const StateVector f1 = sys.flux(u1), f2 = sys.flux(u2), f3 = sys.flux(u3),
                                  f4 = sys.flux(u4);
                dA = (1.0 / (12.0 * h)) * ((-1.0) * f1 + 8.0 * f2 - 8.0 * f3 + f4);
            }
            const double res = std::abs(dG - dot(grad, dA));
            if (res > rep.max_residual) {
                rep.max_residual = res;
                rep.worst_state = u;
            }
        }
    }
    rep.pass = rep.max_residual < threshold;
    return rep;
}

double entropy_hessian_min_eig(const SystemDescriptor& sys, const StateVector& u) {
    require_interior(sys, u, "entropy_hessian_min_eig");
    const int m = sys.dim;
    double hess[3][3] = {};
    for (int j = 0; j < m; ++j) {
        StateVector up = u, um = u;
        up[j] += kFdStep;
        um[j] -= kFdStep;
        const StateVector col = (1.0 / (2.0 * kFdStep)) * (sys.entropy_grad(up) - sys.entropy_grad(um));
        for (int i = 0; i < m; ++i) hess[i][j] = col[i];
    }
    // symmetrize and take the smallest eigenvalue (m <= 3)
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double v = 0.5 * (hess[i][j] + hess[j][i]);
            hess[i][j] = hess[j][i] = v;
        }
    if (m == 1) return hess[0][0];
    if (m == 2) {
        const double tr = hess[0][0] + hess[1][1];
        const double det = hess[0][0] * hess[1][1] - hess[0][1] * hess[1][0];
        const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
        return 0.5 * tr - disc;
    }
    // m == 3: characteristic polynomial via the symmetric eigen identities
    const double q = (hess[0][0] + hess[1][1] + hess[2][2]) / 3.0;
    double p2 = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double b = hess[i][j] - (i == j ? q : 0.0);
            p2 += b * b;
        }
    const double p = std::sqrt(p2 / 6.0);
    if (p == 0.0) return q;
    double detb = 0.0;
    {
        double b[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) b[i][j] = (hess[i][j] - (i == j ? q : 0.0)) / p;
        detb = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
               b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
               b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    }
    const double rr = std::clamp(0.5 * detb, -1.0, 1.0);
    const double phi = std::acos(rr) / 3.0;
    return q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
}

} // namespace shocklab
