#include "shocklab/solver.hpp"

#include <cmath>
#include <random>

#include "shocklab/numerics.hpp"

namespace shocklab {

namespace {

struct WaveEstimate {
    double u = 0.0;
    double c = 0.0;
    double p = 0.0;
};

/// Vacuum-safe primitive extraction for the Euler systems.
WaveEstimate wave_state(const SystemDescriptor& sys, const StateVector& s, double gamma) {
    WaveEstimate w;
    if (s[0] <= 0.0) return w; // vacuum: zero speed, zero pressure
    w.u = s[1] / s[0];
    if (sys.dim == 2) {
        // sound speed from the eigenvalue spread
        const auto [lm, lp] = sys.eigenvalues(s);
        w.c = 0.5 * (lp - lm);
    } else {
        const double e = s[2] / s[0] - 0.5 * w.u * w.u;
        if (e <= 0.0) return w;
        w.p = (gamma - 1.0) * s[0] * e;
        w.c = std::sqrt(gamma * w.p / s[0]);
    }
    return w;
}

double euler_gamma(const SystemDescriptor& sys) {
    // recover gamma from the pressure at a reference state
    const StateVector ref(1.0, 0.0, 1.0);
    const double p = sys.flux(ref)[1]; // rho u^2 + P = P here
    return p + 1.0;
}

StateVector hll_flux(const SystemDescriptor& sys, const StateVector& l, const StateVector& r) {
    const auto lam = [&](const StateVector& s) -> std::pair<double, double> {
        if (s[0] <= 0.0) return {0.0, 0.0};
        return sys.eigenvalues(s);
    };
    const auto [llm, llp] = lam(l);
    const auto [rlm, rlp] = lam(r);
    const double sl = std::min(llm, rlm);
    const double sr = std::max(llp, rlp);
    if (!std::isfinite(sl) || !std::isfinite(sr))
        fail(ErrorCode::invalid_state, "hll: non-finite wave speed estimate");
    if (sl >= 0.0) return sys.flux(l);
    if (sr <= 0.0) return sys.flux(r);
    const StateVector fl = sys.flux(l), fr = sys.flux(r);
    return (1.0 / (sr - sl)) * (sr * fl - sl * fr + (sl * sr) * (r - l));
}

StateVector hllc_flux(const SystemDescriptor& sys, const StateVector& l, const StateVector& r) {
    const double gamma = euler_gamma(sys);
    const WaveEstimate wl = wave_state(sys, l, gamma);
    const WaveEstimate wr = wave_state(sys, r, gamma);
    const double sl = std::min(wl.u - wl.c, wr.u - wr.c);
    const double sr = std::max(wl.u + wl.c, wr.u + wr.c);
    if (!std::isfinite(sl) || !std::isfinite(sr))
        fail(ErrorCode::invalid_state, "hllc: non-finite wave speed estimate");
    if (sl >= 0.0) return sys.flux(l);
    if (sr <= 0.0) return sys.flux(r);

    const double dl = l[0] * (sl - wl.u);
    const double dr = r[0] * (sr - wr.u);
    const double denom = dl - dr;
    if (std::abs(denom) < 1e-300) return hll_flux(sys, l, r);
    const double sm = (wr.p - wl.p + wl.u * dl - wr.u * dr) / denom;

    const auto star = [&](const StateVector& s, const WaveEstimate& w, double sk) {
        const double fac = s[0] * (sk - w.u) / (sk - sm);
        StateVector us = StateVector::zero(3);
        us[0] = fac;
        us[1] = fac * sm;
        const double Ek = s[2] / s[0];
        us[2] = fac * (Ek + (sm - w.u) * (sm + w.p / (s[0] * (sk - w.u))));
        return us;
    };
    if (sm >= 0.0) {
        const StateVector us = star(l, wl, sl);
        return sys.flux(l) + sl * (us - l);
    }
    const StateVector us = star(r, wr, sr);
    return sys.flux(r) + sr * (us - r);
}

double godunov_scalar(const SystemDescriptor& sys, double ul, double ur) {
    const auto f = [&](double u) { return sys.flux(StateVector(u))[0]; };
    // exact flux for a convex scalar law with sonic point at A'(u*) = 0
    if (ul <= ur) {
        const double lam_l = sys.flux_jacobian(StateVector(ul))(0, 0);
        const double lam_r = sys.flux_jacobian(StateVector(ur))(0, 0);
        if (lam_l <= 0.0 && lam_r >= 0.0) {
            // transonic rarefaction: minimum over the fan (binary search on A')
            double a = ul, b = ur;
            for (int i = 0; i < 80; ++i) {
                const double m = 0.5 * (a + b);
                if (sys.flux_jacobian(StateVector(m))(0, 0) < 0.0)
                    a = m;
                else
                    b = m;
            }
            return f(0.5 * (a + b));
        }
        return std::min(f(ul), f(ur));
    }
    return std::max(f(ul), f(ur));
}

} // namespace

FluxScheme default_scheme(const SystemDescriptor& sys) {
    if (sys.dim == 1) return FluxScheme::godunov_exact;
    if (sys.dim == 2) return FluxScheme::hll;
    return FluxScheme::hllc;
}

StateVector riemann_flux(const SystemDescriptor& sys, FluxScheme scheme,
                         const StateVector& left, const StateVector& right) {
    require_finite(left, "riemann_flux");
    require_finite(right, "riemann_flux");
    switch (scheme) {
        case FluxScheme::godunov_exact:
            if (sys.dim != 1) fail(ErrorCode::config, "godunov_exact is scalar-only");
            return StateVector(godunov_scalar(sys, left[0], right[0]));
        case FluxScheme::hll:
            return hll_flux(sys, left, right);
        case FluxScheme::hllc:
            if (sys.dim != 3) fail(ErrorCode::config, "hllc needs the full Euler system");
            return hllc_flux(sys, left, right);
    }
    fail(ErrorCode::config, "riemann_flux: unknown scheme");
}

double max_wave_speed(const SystemDescriptor& sys, const FieldSnapshot& field) {
    double m = 0.0;
    for (const auto& u : field.cells) {
        if (sys.vacuum(u)) continue;
        if (!sys.interior(u)) fail(ErrorCode::invalid_state, "max_wave_speed: bad cell state");
        const auto [lm, lp] = sys.eigenvalues(u);
        m = std::max({m, std::abs(lm), std::abs(lp)});
        if (!std::isfinite(m)) fail(ErrorCode::invalid_state, "max_wave_speed: non-finite speed");
    }
    return m;
}

double cfl_dt(const SystemDescriptor& sys, const FieldSnapshot& field, double cfl) {
    const double speed = max_wave_speed(sys, field);
    if (speed == 0.0) fail(ErrorCode::config, "cfl_dt: field has no wave speeds");
    return cfl * field.grid.dx() / speed;
}

FieldSnapshot step(const SystemDescriptor& sys, const FieldSnapshot& field,
                   const SolverConfig& cfg, double dt) {
    const int n = field.grid.n_cells;
    const double lam = dt / field.grid.dx();

    const auto cell = [&](int i) -> const StateVector& {
        if (i < 0)
            return cfg.boundary == BoundaryKind::periodic ? field.cells[static_cast<std::size_t>(i + n)]
                                                          : cfg.left_bc;
        if (i >= n)
            return cfg.boundary == BoundaryKind::periodic ? field.cells[static_cast<std::size_t>(i - n)]
                                                          : cfg.right_bc;
        return field.cells[static_cast<std::size_t>(i)];
    };

    std::vector<StateVector> fluxes(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i)
        fluxes[static_cast<std::size_t>(i)] = riemann_flux(sys, cfg.scheme, cell(i - 1), cell(i));

    FieldSnapshot out;
    out.time = field.time + dt;
    out.grid = field.grid;
    out.cells.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.cells[static_cast<std::size_t>(i)] =
            field.cells[static_cast<std::size_t>(i)] -
            lam * (fluxes[static_cast<std::size_t>(i + 1)] - fluxes[static_cast<std::size_t>(i)]);
        if (!out.cells[static_cast<std::size_t>(i)].finite())
            fail(ErrorCode::invalid_state, "step: non-finite update");
    }

    if (cfg.check_entropy && cfg.boundary == BoundaryKind::periodic) {
        double before = 0.0, after = 0.0;
        for (int i = 0; i < n; ++i) {
            before += sys.entropy(field.cells[static_cast<std::size_t>(i)]);
            after += sys.entropy(out.cells[static_cast<std::size_t>(i)]);
        }
        if (after > before + 1e-10 * std::max(1.0, std::abs(before)))
            fail(ErrorCode::runtime, "step: total entropy increased on a periodic domain");
    }
    return out;
}

namespace {

double prop14_profile(double x, double r, double eps) {
    if (x >= 0.0) return -1.0;
    return 1.0 + std::sqrt(2.0 * r * eps) * std::pow(1.0 - x, -0.5 - r);
}

} // namespace

FieldSnapshot initial_data(const SystemDescriptor& sys, const ShockTriple& shock,
                           const Grid1D& grid, const InitialSpec& spec) {
    grid.validate();
    if (spec.kind == InitialKind::prop14) {
        if (sys.dim != 1) fail(ErrorCode::parameter, "prop14 initial data is scalar-only");
        if (!(spec.r > 0.0 && spec.r < 0.5))
            fail(ErrorCode::parameter, "prop14 initial data needs 0 < r < 1/2");
        if (spec.eps < 0.0) fail(ErrorCode::parameter, "prop14 initial data needs eps >= 0");
    }
    if (spec.kind == InitialKind::shock_plus_bump && spec.amplitude != 0.0 && !(spec.width > 0.0))
        fail(ErrorCode::parameter, "bump initial data needs a positive width");

    const StateVector pl = sys.to_primitive(shock.left);
    const StateVector pr = sys.to_primitive(shock.right);

    // per-cell noise for the random kind, constant inside each cell
    std::vector<double> noise;
    if (spec.kind == InitialKind::random_perturbation) {
        std::mt19937_64 rng(spec.seed);
        std::uniform_real_distribution<double> dist(-spec.amplitude, spec.amplitude);
        noise.resize(static_cast<std::size_t>(grid.n_cells));
        for (auto& v : noise) v = dist(rng);
    }

    const auto primitive_at = [&](double x, int cell) {
        const double jump = spec.kind == InitialKind::pure_shock ? spec.offset : 0.0;
        StateVector p = x < jump ? pl : pr;
        switch (spec.kind) {
            case InitialKind::pure_shock:
                break;
            case InitialKind::shock_plus_bump: {
                const double d = x - spec.center;
                if (std::abs(d) < 0.5 * spec.width) {
                    const double w = std::cos(M_PI * d / spec.width);
                    const double bump = spec.amplitude * w * w;
                    if (sys.dim == 1)
                        p[0] += bump;
                    else
                        p[0] *= 1.0 + bump;
                }
                break;
            }
            case InitialKind::prop14:
                p = StateVector(prop14_profile(x, spec.r, spec.eps));
                break;
            case InitialKind::random_perturbation: {
                if (x >= spec.support_lo && x <= spec.support_hi) {
                    const double b = noise[static_cast<std::size_t>(cell)];
                    if (sys.dim == 1)
                        p[0] += b;
                    else
                        p[0] *= 1.0 + b;
                }
                break;
            }
        }
        return p;
    };

    FieldSnapshot field;
    field.time = 0.0;
    field.grid = grid;
    field.cells.resize(static_cast<std::size_t>(grid.n_cells));
    const double dx = grid.dx();
    for (int i = 0; i < grid.n_cells; ++i) {
        const double xc = grid.center(i);
        StateVector avg = StateVector::zero(sys.dim);
        for (int q = 0; q < 5; ++q) {
            const double x = xc + 0.5 * dx * num::gauss5_x[q];
            avg += (0.5 * num::gauss5_w[q]) * sys.from_primitive(primitive_at(x, i));
        }
        if (!sys.extended(avg))
            fail(ErrorCode::invalid_state, "initial_data: cell average left the state domain");
        field.cells[static_cast<std::size_t>(i)] = avg;
    }
    return field;
}

} // namespace shocklab
