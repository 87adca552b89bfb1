#include "shocklab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shocklab/numerics.hpp"
#include "shocklab/relent.hpp"

namespace shocklab {

namespace {

/// Relative dissipation margins of the plateau conditions at one state.
/// ok requires v < lambda-(U) and both margins positive (U = U_L passes by
/// continuity: both sides of its first condition vanish).
struct BallMargins {
    double worst = std::numeric_limits<double>::infinity();
    bool ok = true;
};

void update_margins(const SystemDescriptor& sys, const StateVector& u,
                    const StateVector& ul, const StateVector& ur, double v,
                    BallMargins& m) {
    if (!sys.interior(u)) {
        m.ok = false;
        return;
    }
    if (!(v < sys.eigenvalues(u).first)) {
        m.ok = false;
        return;
    }
    // below this the relative entropy is pure cancellation noise and the
    // ratio conditions carry no signal (the diagonal limit is covered by
    // the quadratic expansion, not by sampling)
    const double floor = 1e-12 * std::max(1.0, dot(u, u));
    const double eta_l = rel_entropy(sys, u, ul);
    if (eta_l > floor) {
        const double g = (rel_flux(sys, u, ul) - v * eta_l) / eta_l;
        if (!(g > 0.0)) {
            m.ok = false;
            return;
        }
        m.worst = std::min(m.worst, g);
    }
    const double eta_r = rel_entropy(sys, u, ur);
    if (eta_r > floor) {
        const double g = (v * eta_r - rel_flux(sys, u, ur)) / eta_r;
        if (!(g > 0.0)) {
            m.ok = false;
            return;
        }
        m.worst = std::min(m.worst, g);
    }
}

BallMargins ball_margins(const SystemDescriptor& sys, const ShockTriple& shock, double v,
                         double radius, const SamplingSpec& spec) {
    BallMargins m;
    const int m_dim = sys.dim;
    const auto interior = num::unit_ball_points(m_dim, spec.n_samples, spec.seed);
    for (const auto& d : interior) {
        update_margins(sys, shock.left + radius * d, shock.left, shock.right, v, m);
        if (!m.ok) return m;
    }
    // deterministic boundary set: the binding state sits on the sphere
    const auto boundary = num::unit_sphere_points(m_dim, m_dim == 2 ? 64 : 128);
    for (const auto& d : boundary) {
        update_margins(sys, shock.left + radius * d, shock.left, shock.right, v, m);
        if (!m.ok) return m;
    }
    return m;
}

} // namespace

VelocityBand find_velocity_band(const SystemDescriptor& sys, const ShockTriple& shock) {
    if (!sys.interior(shock.left) || !sys.interior(shock.right))
        fail(ErrorCode::invalid_state, "find_velocity_band: endpoints must be interior states");
    const double lam = sys.eigenvalues(shock.left).first;
    if (!(shock.sigma < lam))
        fail(ErrorCode::not_a_one_shock,
             "find_velocity_band: speed does not lie below the left 1-eigenvalue");
    const double eta = rel_entropy(sys, shock.left, shock.right);
    if (!(eta > 0.0))
        fail(ErrorCode::config, "find_velocity_band: coincident shock endpoints");
    VelocityBand band;
    band.lo = std::max(shock.sigma, rel_flux(sys, shock.left, shock.right) / eta);
    band.hi = lam;
    if (!(band.lo < band.hi))
        fail(ErrorCode::hypothesis_violation, "find_velocity_band: empty velocity band");
    band.v = 0.5 * (band.lo + band.hi);
    return band;
}

BallConstants find_ball_constants(const SystemDescriptor& sys, const ShockTriple& shock,
                                  double v, const SamplingSpec& spec) {
    const double gap = (shock.right - shock.left).norm();
    const auto ok_at = [&](double radius) { return ball_margins(sys, shock, v, radius, spec).ok; };

    double hi = gap;     // the second condition fails near U_R by construction
    double lo = 1e-6 * gap;
    if (!ok_at(lo))
        fail(ErrorCode::hypothesis_violation,
             "find_ball_constants: no positive radius satisfies the dissipation conditions");
    if (ok_at(hi)) {
        // expand until failure so the bisection bracket is genuine
        int guard = 0;
        while (ok_at(hi) && guard++ < 60) {
            lo = hi;
            hi *= 2.0;
        }
        if (guard >= 60) fail(ErrorCode::hypothesis_violation, "find_ball_constants: unbounded radius");
    }
    while (hi - lo > 0.01 * lo) {
        const double mid = 0.5 * (lo + hi);
        if (ok_at(mid))
            lo = mid;
        else
            hi = mid;
    }
    const BallMargins m = ball_margins(sys, shock, v, lo, spec);
    BallConstants out;
    out.C0 = lo;
    out.worst_margin = m.worst;
    out.beta = 0.5 * m.worst;
    if (!(out.beta > 0.0))
        fail(ErrorCode::hypothesis_violation, "find_ball_constants: vanishing margin");
    return out;
}

bool oa_membership(const SystemDescriptor& sys, const StateVector& u,
                   const StateVector& u_left, const StateVector& u_right, double a) {
    if (!(a > 0.0)) fail(ErrorCode::parameter, "oa_membership: weight must be positive");
    if (!sys.extended(u)) return false;
    return rel_entropy(sys, u, u_left) - a * rel_entropy(sys, u, u_right) <= 0.0;
}

double oa_radius(const SystemDescriptor& sys, const StateVector& u_left,
                 const StateVector& u_right, double a, const SamplingSpec& spec) {
    // O_a is convex and contains U_L: bisect along rays for the boundary.
    const int m = sys.dim;
    const double reach = 4.0 * std::max(1.0, (u_right - u_left).norm());
    auto rays = num::unit_sphere_points(m, std::max(8, spec.n_samples));
    double radius = 0.0;
    for (const auto& d : rays) {
        const auto member = [&](double t) {
            return oa_membership(sys, u_left + t * d, u_left, u_right, a);
        };
        radius = std::max(radius, num::bisect_largest(member, reach, 1e-12));
    }
    return radius;
}

AStarResult find_a_star(const SystemDescriptor& sys, const ShockTriple& shock, double v,
                        double C0, double beta, std::span<const ShockCurve> bank,
                        const AStarGrids& grids) {
    if (bank.empty() || !(bank[0].base() == shock.left))
        fail(ErrorCode::config, "find_a_star: bank[0] must be the curve anchored at U_L");
    const ShockCurve& anchor = bank[0];

    // locate the anchor parameter s0 of U_R on the U_L curve: coarse scan,
    // then ternary refinement of the distance to U_R
    double s0 = 0.0;
    {
        double best = std::numeric_limits<double>::infinity();
        const int n = 400;
        for (int i = 0; i <= n; ++i) {
            const double s = anchor.s_max() * i / n;
            const double d = (anchor.at(s).state - shock.right).norm();
            if (d < best) {
                best = d;
                s0 = s;
            }
        }
        double lo = std::max(0.0, s0 - anchor.s_max() / n);
        double hi = std::min(anchor.s_max(), s0 + anchor.s_max() / n);
        const auto dist = [&](double s) { return (anchor.at(s).state - shock.right).norm(); };
        for (int it = 0; it < 80; ++it) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (dist(m1) < dist(m2))
                hi = m2;
            else
                lo = m1;
        }
        s0 = 0.5 * (lo + hi);
        if (dist(s0) > 1e-6 * std::max(1.0, (shock.right - shock.left).norm()))
            fail(ErrorCode::config, "find_a_star: U_R does not sit on the anchor curve");
    }

    AStarResult out;

    // dissipation constant of the anchor shock from the two-regime estimate
    out.kappa = diperna_dissipation(anchor, std::min(anchor.s_max(), 1.5 * s0), s0).kappa;
    if (!(out.kappa > 0.0))
        fail(ErrorCode::hypothesis_violation, "find_a_star: no dissipation constant");

    // sampled perturbation constant: bound the drift of the dissipation
    // identity under a change of curve base, normalized by
    // |U - U_L|^2 (1 + |dsigma|) + |U - U_L| |dsigma|
    const StateVector grad_r = sys.entropy_grad(shock.right);
    for (const auto& curve : bank.subspan(1)) {
        const StateVector& u = curve.base();
        const double du = (u - shock.left).norm();
        if (du < 1e-12) continue;
        if (s0 > curve.s_max()) continue;
        const auto p0 = curve.at(s0);
        const StateVector grad_p0 = sys.entropy_grad(p0.state);
        for (int i = 1; i <= grids.n_s; ++i) {
            const double s = curve.s_max() * i / grids.n_s;
            const auto p = curve.at(s);
            const double dsig = std::abs(p.sigma - p0.sigma);
            const double rhs =
                rel_flux(sys, shock.right, p0.state) -
                p.sigma * rel_entropy(sys, shock.right, p0.state) +
                dot(grad_r - grad_p0,
                    sys.flux(u) - sys.flux(shock.left) - p.sigma * (u - shock.left) +
                        (shock.sigma - p.sigma) * (shock.left - shock.right));
            const double denom = du * du * (1.0 + dsig) + du * dsig;
            out.C_lip = std::max(out.C_lip, std::abs(rhs) / denom);
        }
    }
    if (!(out.C_lip > 0.0)) out.C_lip = 1.0; // bank had no off-anchor curves

    // smallness condition C (x + x^2) <= kappa/2 for x = eps C0
    const double x = 0.5 * (-1.0 + std::sqrt(1.0 + 2.0 * out.kappa / out.C_lip));
    out.epsilon = std::min(0.499, x / C0);
    const double eps_c0 = out.epsilon * C0;

    // halving search on a
    SamplingSpec ray_spec{grids.n_oa_rays, grids.seed};
    const double master_tol = 1e-10 * std::max(1.0, std::abs(v));
    double a = 0.5;
    bool passed = false;
    while (a > 1e-12) {
        bool ok = oa_radius(sys, shock.left, shock.right, a, ray_spec) <= eps_c0;
        if (ok) {
            out.worst_master = -std::numeric_limits<double>::infinity();
            out.bases_used = 0;
            for (const auto& curve : bank) {
                const StateVector& um = curve.base();
                if ((um - shock.left).norm() > eps_c0 * (1.0 + 1e-9)) continue;
                ++out.bases_used;
                for (int i = 0; i <= grids.n_s; ++i) {
                    const double s = curve.s_max() * i / grids.n_s;
                    const auto p = curve.at(s);
                    if (p.sigma > v) continue;
                    const double lhs =
                        -rel_flux(sys, um, shock.left) +
                        p.sigma * rel_entropy(sys, um, shock.left) +
                        a * (rel_flux(sys, p.state, shock.right) -
                             p.sigma * rel_entropy(sys, p.state, shock.right));
                    out.worst_master = std::max(out.worst_master, lhs);
                    if (lhs > master_tol) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
            }
        }
        if (ok) {
            passed = true;
            break;
        }
        a *= 0.5;
    }
    if (!passed)
        fail(ErrorCode::hypothesis_violation, "find_a_star: weight underflow in the halving search");

    out.a_star = a;  // first passing value of the search
    out.a = 0.5 * a; // returned weight keeps margin against sampling holes
    (void)beta;      // the inequality is checked directly on the grid instead
                     // of through the beta-based sufficient condition
    return out;
}

namespace {

std::vector<ShockCurve> build_bank(const SystemDescriptor& sys, const ShockTriple& shock,
                                   double radius, double s_max, int n_points,
                                   std::uint64_t seed) {
    std::vector<ShockCurve> bank;
    bank.push_back(shock_curve(sys, shock.left, ShockFamily::one_shock, s_max, n_points));
    const int n_dirs = sys.dim == 1 ? 2 : (sys.dim == 2 ? 6 : 8);
    const auto dirs = num::unit_sphere_points(sys.dim, n_dirs);
    (void)seed;
    for (const auto& d : dirs) {
        for (const double frac : {0.5, 1.0}) {
            const StateVector base = shock.left + (frac * radius) * d;
            if (!sys.interior(base)) continue;
            bank.push_back(shock_curve(sys, base, ShockFamily::one_shock, s_max, n_points));
        }
    }
    return bank;
}

} // namespace

ContractionConfig build_contraction_config(const SystemDescriptor& sys,
                                           const ShockTriple& shock,
                                           const SamplingSpec& spec, const AStarGrids& grids) {
    if (rh_residual_scaled(sys, shock) > 1e-8)
        fail(ErrorCode::config, "build_contraction_config: endpoints violate Rankine-Hugoniot");

    ContractionConfig cfg;
    cfg.shock = shock;

    const VelocityBand band = find_velocity_band(sys, shock);
    cfg.v = band.v;

    const BallConstants ball = find_ball_constants(sys, shock, cfg.v, spec);
    cfg.C0 = ball.C0;
    cfg.beta = ball.beta;

    // anchor curve must reach past U_R and past the sigma <= v range
    double s_anchor = sys.dim == 1 ? (shock.left - shock.right).norm() : 0.0;
    if (sys.dim > 1) {
        // arc length to U_R is unknown a priori; grow until the curve passes it
        double smax = 1.5 * (shock.right - shock.left).norm();
        for (int tries = 0; tries < 8; ++tries) {
            const ShockCurve probe = shock_curve(sys, shock.left, ShockFamily::one_shock, smax, 64);
            double best = std::numeric_limits<double>::infinity(), sbest = 0;
            for (const auto& p : probe.points()) {
                const double d = (p.state - shock.right).norm();
                if (d < best) {
                    best = d;
                    sbest = p.s;
                }
            }
            if (sbest < 0.9 * smax) {
                s_anchor = sbest;
                break;
            }
            smax *= 2.0;
        }
        if (s_anchor == 0.0)
            fail(ErrorCode::config, "build_contraction_config: U_R not found on the 1-curve");
    }

    AStarGrids g = grids;
    if (g.s_max <= 0.0) g.s_max = 3.0 * s_anchor;
    g.seed = g.seed ? g.seed : spec.seed;
    const int curve_points = sys.dim == 1 ? 64 : 240;

    // two passes: the second bank carries bases inside the selected radius
    auto bank = build_bank(sys, shock, 0.5 * cfg.C0, g.s_max, curve_points, g.seed);
    AStarResult first = find_a_star(sys, shock, cfg.v, cfg.C0, cfg.beta, bank, g);
    const double eps_c0 = first.epsilon * cfg.C0;
    auto bank2 = build_bank(sys, shock, eps_c0, g.s_max, curve_points, g.seed + 1);
    AStarResult res = find_a_star(sys, shock, cfg.v, cfg.C0, cfg.beta, bank2, g);

    cfg.epsilon = res.epsilon;
    cfg.a = res.a;

    cfg.audit.seed = spec.seed;
    cfg.audit.n_ball_samples = spec.n_samples;
    cfg.audit.n_oa_rays = g.n_oa_rays;
    cfg.audit.n_bank_curves = static_cast<int>(bank2.size());
    cfg.audit.n_s_grid = g.n_s;
    cfg.audit.band_lo = band.lo;
    cfg.audit.band_hi = band.hi;
    cfg.audit.worst_ball_margin = ball.worst_margin;
    cfg.audit.oa_radius = oa_radius(sys, shock.left, shock.right, cfg.a,
                                    SamplingSpec{g.n_oa_rays, g.seed});
    cfg.audit.kappa = res.kappa;
    cfg.audit.C_lip = res.C_lip;
    cfg.audit.worst_master = res.worst_master;
    cfg.audit.a_star = res.a_star;
    return cfg;
}

double shift_velocity(const SystemDescriptor& sys, const StateVector& u,
                      const ContractionConfig& cfg) {
    require_finite(u, "shift_velocity");
    if (!sys.extended(u))
        fail(ErrorCode::invalid_state, "shift_velocity: state outside the extended domain");
    if ((u - cfg.shock.left).norm() <= cfg.C0) return cfg.v; // plateau
    const double eta_l = rel_entropy(sys, u, cfg.shock.left);
    const double eta_r = rel_entropy(sys, u, cfg.shock.right);
    const double denom = eta_l - cfg.a * eta_r;
    const double b1 = std::max(0.0, -rel_flux(sys, u, cfg.shock.left) + cfg.v * eta_l);
    const double b2 = cfg.a * std::max(0.0, rel_flux(sys, u, cfg.shock.right) - cfg.v * eta_r);
    if (denom <= 0.0) {
        if (b1 + b2 > 0.0)
            fail(ErrorCode::config_integrity,
                 "shift_velocity: active numerator over the O_a region; config is inconsistent");
        return cfg.v;
    }
    return cfg.v - (b1 + b2) / denom;
}

bool recheck_contraction_config(const SystemDescriptor& sys, const ContractionConfig& cfg,
                                std::uint64_t seed) {
    if (!(cfg.shock.sigma < cfg.v && cfg.v < sys.eigenvalues(cfg.shock.left).first)) return false;
    if (!(cfg.a > 0.0 && cfg.a < 1.0)) return false;

    const double eps_c0 = cfg.epsilon * cfg.C0;
    const double rad = oa_radius(sys, cfg.shock.left, cfg.shock.right, cfg.a,
                                 SamplingSpec{96, seed});
    if (rad > eps_c0 * (1.0 + 1e-6)) return false;

    const auto pts = num::unit_ball_points(sys.dim, 2000, seed);
    for (const auto& d : pts) {
        BallMargins m;
        update_margins(sys, cfg.shock.left + cfg.C0 * d, cfg.shock.left, cfg.shock.right,
                       cfg.v, m);
        if (!m.ok || m.worst < cfg.beta) return false;
    }
    return true;
}

} // namespace shocklab
