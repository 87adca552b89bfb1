#include "shocklab/hugoniot.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "shocklab/numerics.hpp"
#include "shocklab/relent.hpp"

namespace shocklab {

namespace {

constexpr double kRhTol = 1e-10;
constexpr double kNewtonTol = 1e-13;

Eigen::VectorXd to_eigen(const StateVector& u) {
    Eigen::VectorXd v(u.size());
    for (int i = 0; i < u.size(); ++i) v(i) = u[i];
    return v;
}

StateVector from_eigen(const Eigen::VectorXd& v) {
    StateVector u = StateVector::zero(static_cast<int>(v.size()));
    for (int i = 0; i < v.size(); ++i) u[i] = v(i);
    return u;
}

Eigen::MatrixXd jacobian(const SystemDescriptor& sys, const StateVector& u) {
    const SmallMatrix j = sys.flux_jacobian(u);
    Eigen::MatrixXd m(j.m, j.m);
    for (int i = 0; i < j.m; ++i)
        for (int k = 0; k < j.m; ++k) m(i, k) = j(i, k);
    return m;
}

/// Newton solve of A(S) - A(base) = sigma (S - base) plus one scalar
/// constraint g(S) = 0 rows into the last equation.
struct NewtonResult {
    StateVector state;
    double sigma = 0.0;
    bool converged = false;
};

template <typename Constraint, typename ConstraintGrad>
NewtonResult newton_rh(const SystemDescriptor& sys, const StateVector& base,
                       StateVector s_init, double sigma_init, Constraint g,
                       ConstraintGrad grad_g) {
    const int m = sys.dim;
    Eigen::VectorXd x(m + 1);
    for (int i = 0; i < m; ++i) x(i) = s_init[i];
    x(m) = sigma_init;
    const Eigen::VectorXd base_v = to_eigen(base);
    const Eigen::VectorXd fbase = to_eigen(sys.flux(base));
    const double scale = std::max(1.0, fbase.cwiseAbs().maxCoeff());

    NewtonResult out;
    for (int it = 0; it < 60; ++it) {
        StateVector s = from_eigen(x.head(m));
        if (!s.finite() || !sys.interior(s)) return out;
        const double sigma = x(m);
        Eigen::VectorXd res(m + 1);
        res.head(m) = to_eigen(sys.flux(s)) - fbase - sigma * (x.head(m) - base_v);
        res(m) = g(s);
        if (res.cwiseAbs().maxCoeff() < kNewtonTol * scale) {
            out.state = s;
            out.sigma = sigma;
            out.converged = true;
            return out;
        }
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m + 1, m + 1);
        J.topLeftCorner(m, m) = jacobian(sys, s) - sigma * Eigen::MatrixXd::Identity(m, m);
        J.topRightCorner(m, 1) = -(x.head(m) - base_v);
        const StateVector gg = grad_g(s);
        for (int i = 0; i < m; ++i) J(m, i) = gg[i];
        Eigen::VectorXd delta = J.fullPivLu().solve(-res);
        if (!delta.allFinite()) return out;
        x += delta;
    }
    return out;
}

double hermite(double p0, double p1, double m0, double m1, double h, double u) {
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * p0 + (u3 - 2 * u2 + u) * h * m0 +
           (-2 * u3 + 3 * u2) * p1 + (u3 - u2) * h * m1;
}

} // namespace

RhResidual rh_residual(const SystemDescriptor& sys, const StateVector& left,
                       const StateVector& right, double sigma) {
    require_finite(left, "rh_residual");
    require_finite(right, "rh_residual");
    if (!sys.extended(left) || !sys.extended(right))
        fail(ErrorCode::invalid_state, "rh_residual: state outside the extended domain");
    RhResidual out;
    out.residual = sys.flux(right) - sys.flux(left) - sigma * (right - left);
    out.entropy_production =
        sys.entropy_flux(right) - sys.entropy_flux(left) -
        sigma * (sys.entropy(right) - sys.entropy(left));
    return out;
}

double rh_residual_scaled(const SystemDescriptor& sys, const ShockTriple& t) {
    const RhResidual r = rh_residual(sys, t.left, t.right, t.sigma);
    const double scale =
        std::max({1.0, sys.flux(t.left).norm_inf(), sys.flux(t.right).norm_inf(),
                  std::abs(t.sigma) * (t.right - t.left).norm_inf()});
    return r.residual.norm_inf() / scale;
}

ShockCurve::ShockCurve(SystemDescriptor sys, StateVector base, ShockFamily family,
                       std::vector<ShockCurvePoint> points,
                       std::vector<StateVector> tangents)
    : sys_(std::move(sys)), base_(std::move(base)), family_(family),
      points_(std::move(points)), tangents_(std::move(tangents)) {}

ShockCurvePoint ShockCurve::at(double s) const {
    const double smax = points_.back().s;
    if (s < -1e-12 || s > smax * (1.0 + 1e-12))
        fail(ErrorCode::out_of_range, "shock curve: parameter outside [0, s_max]");
    s = std::clamp(s, 0.0, smax);
    if (s == 0.0) return points_.front();

    if (sys_.dim == 1) {
        const double u0 = base_[0];
        const double su = family_ == ShockFamily::one_shock ? u0 - s : u0 + s;
        const StateVector st(su);
        const double sigma = (sys_.flux(st)[0] - sys_.flux(base_)[0]) / (su - u0);
        return {s, st, sigma};
    }

    const double ds = points_[1].s - points_[0].s;
    std::size_t k = std::min(points_.size() - 2, static_cast<std::size_t>(s / ds));
    const auto& p0 = points_[k];
    const auto& p1 = points_[k + 1];
    const double h = p1.s - p0.s;
    const double u = (s - p0.s) / h;

    StateVector pred = StateVector::zero(sys_.dim);
    for (int i = 0; i < sys_.dim; ++i)
        pred[i] = hermite(p0.state[i], p1.state[i], tangents_[k][i], tangents_[k + 1][i], h, u);
    double sig_pred = (1.0 - u) * p0.sigma + u * p1.sigma;

    // pull the predictor back onto the RH manifold along the tangent plane
    StateVector tan = (1.0 - u) * tangents_[k] + u * tangents_[k + 1];
    tan *= 1.0 / tan.norm();
    auto res = newton_rh(
        sys_, base_, pred, sig_pred,
        [&](const StateVector& st) { return dot(st - pred, tan); },
        [&](const StateVector&) { return tan; });
    if (!res.converged)
        fail(ErrorCode::curve_continuation, "shock curve: polish failed to converge");
    return {s, res.state, res.sigma};
}

std::pair<StateVector, double> ShockCurve::tangent_sigma_prime(double s) const {
    if (sys_.dim == 1) {
        const double u0 = base_[0];
        const double sgn = family_ == ShockFamily::one_shock ? -1.0 : 1.0;
        if (s < 1e-9) s = 1e-9; // speed derivative limit at the base point
        const double su = u0 + sgn * s;
        const StateVector st(su);
        const double sigma = (sys_.flux(st)[0] - sys_.flux(base_)[0]) / (su - u0);
        const double ap = sys_.flux_jacobian(st)(0, 0);
        return {StateVector(sgn), (ap - sigma) / s}; // from d/ds of the RH quotient
    }
    // speed derivative by central differences of the polished curve speed;
    // the linearized RH system is rank-deficient at s = 0, so differentiating
    // the polished sigma is the stable route
    const double smax = points_.back().s;
    const double ds = points_[1].s - points_[0].s;
    const double h = std::min(1e-4 * std::max(1.0, smax), 0.25 * ds);
    s = std::clamp(s, 0.0, smax);
    // all stencils are anchored at s and O(h^2)-consistent, keeping the
    // derivative continuous across branch switches
    double sp;
    if (s >= h && s + h <= smax) {
        sp = (at(s + h).sigma - at(s - h).sigma) / (2.0 * h);
    } else if (s + 2.0 * h <= smax) {
        sp = (-3.0 * at(s).sigma + 4.0 * at(s + h).sigma - at(s + 2.0 * h).sigma) / (2.0 * h);
    } else if (s >= 2.0 * h) {
        sp = (3.0 * at(s).sigma - 4.0 * at(s - h).sigma + at(s - 2.0 * h).sigma) / (2.0 * h);
    } else {
        sp = (at(smax).sigma - at(0.0).sigma) / smax; // degenerate short curve
    }
    const std::size_t k =
        std::min(points_.size() - 1, static_cast<std::size_t>(std::max(0.0, s / ds + 0.5)));
    StateVector tan = tangents_[k];
    tan *= 1.0 / tan.norm();
    return {tan, sp};
}

ShockCurve shock_curve(const SystemDescriptor& sys, const StateVector& base,
                       ShockFamily family, double s_max, int n_points) {
    require_finite(base, "shock_curve");
    if (!sys.interior(base))
        fail(ErrorCode::invalid_state, "shock_curve: base outside the interior domain");
    if (n_points < 2) fail(ErrorCode::config, "shock_curve: need at least 2 points");
    if (!(s_max > 0.0)) fail(ErrorCode::config, "shock_curve: s_max must be positive");

    // The n-family is the 1-family of the reflected system; continue there
    // and map speeds back with a sign flip.
    const bool reflect = family == ShockFamily::n_shock;
    const SystemDescriptor work = reflect ? reflected(sys) : sys;
    const double speed_sign = reflect ? -1.0 : 1.0;

    const int m = sys.dim;
    const double ds = s_max / (n_points - 1);
    std::vector<ShockCurvePoint> pts;
    std::vector<StateVector> tans;
    pts.reserve(static_cast<std::size_t>(n_points));

    const double lam0 = work.eigenvalues(base).first;
    pts.push_back({0.0, base, speed_sign * lam0});

    if (m == 1) {
        for (int k = 1; k < n_points; ++k) {
            const double s = k * ds;
            const double su = family == ShockFamily::one_shock ? base[0] - s : base[0] + s;
            const StateVector st(su);
            const double sigma = (sys.flux(st)[0] - sys.flux(base)[0]) / (su - base[0]);
            pts.push_back({s, st, sigma});
        }
        std::vector<StateVector> dummy(pts.size(),
                                       StateVector(family == ShockFamily::one_shock ? -1.0 : 1.0));
        return ShockCurve(sys, base, family, std::move(pts), std::move(dummy));
    }

    // initial tangent: eigenvector of the smallest eigenvalue of the working flux
    Eigen::MatrixXd J = jacobian(work, base);
    Eigen::EigenSolver<Eigen::MatrixXd> es(J);
    int imin = 0;
    for (int i = 1; i < m; ++i)
        if (es.eigenvalues()(i).real() < es.eigenvalues()(imin).real()) imin = i;
    Eigen::VectorXd r = es.eigenvectors().col(imin).real();
    r.normalize();
    StateVector tan = from_eigen(r);
    tans.push_back(tan);

    StateVector prev = base;
    double sig_prev = lam0;
    bool direction_fixed = false;
    for (int k = 1; k < n_points; ++k) {
        NewtonResult res;
        const auto try_dir = [&](const StateVector& d) {
            StateVector guess = prev + ds * d;
            return newton_rh(
                work, base, guess, sig_prev,
                [&](const StateVector& st) { return dot(st - prev, st - prev) - ds * ds; },
                [&](const StateVector& st) { return 2.0 * (st - prev); });
        };
        res = try_dir(tan);
        if (!direction_fixed && (!res.converged || res.sigma >= sig_prev)) {
            const auto alt = try_dir(-1.0 * tan);
            if (alt.converged && alt.sigma < sig_prev) {
                res = alt;
                tan *= -1.0;
                tans[0] = tan; // tangent at s = 0 points along the accepted branch
            }
        }
        if (!res.converged || !(res.sigma < sig_prev)) {
            fail(ErrorCode::curve_continuation,
                 "shock_curve: continuation stalled at s = " + std::to_string((k - 1) * ds));
        }
        direction_fixed = true;

        const double sigma = speed_sign * res.sigma;
        const ShockTriple trip =
            family == ShockFamily::one_shock
                ? ShockTriple{base, res.state, sigma}
                : ShockTriple{res.state, base, sigma};
        if (rh_residual_scaled(sys, trip) > kRhTol)
            fail(ErrorCode::curve_continuation, "shock_curve: point violates Rankine-Hugoniot");
        const RhResidual rh = rh_residual(sys, trip.left, trip.right, trip.sigma);
        if (rh.entropy_production > kRhTol)
            fail(ErrorCode::curve_continuation, "shock_curve: point not entropy admissible");

        tan = (1.0 / ds) * (res.state - prev);
        tans.push_back(tan);
        pts.push_back({k * ds, res.state, sigma});
        prev = res.state;
        sig_prev = res.sigma;
    }
    return ShockCurve(sys, base, family, std::move(pts), std::move(tans));
}

LiuStrengthenReport liu_strengthen_check(const SystemDescriptor& sys, const ShockCurve& curve) {
    const auto& pts = curve.points();
    if (pts.size() < 3) fail(ErrorCode::config, "liu_strengthen_check: need at least 3 points");
    LiuStrengthenReport rep;
    rep.min_liu_margin = std::numeric_limits<double>::infinity();
    rep.min_strengthen_margin = std::numeric_limits<double>::infinity();
    const double family_sign = curve.family() == ShockFamily::one_shock ? -1.0 : 1.0;
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
        const double h2 = pts[k + 1].s - pts[k - 1].s;
        const double sp = (pts[k + 1].sigma - pts[k - 1].sigma) / h2;
        const double ep = (rel_entropy(sys, curve.base(), pts[k + 1].state) -
                           rel_entropy(sys, curve.base(), pts[k - 1].state)) /
                          h2;
        CurveAuditRow row;
        row.s = pts[k].s;
        row.sigma = pts[k].sigma;
        row.liu_margin = family_sign * sp;
        row.strengthen_margin = ep;
        rep.rows.push_back(row);
        rep.min_liu_margin = std::min(rep.min_liu_margin, row.liu_margin);
        rep.min_strengthen_margin = std::min(rep.min_strengthen_margin, row.strengthen_margin);
    }
    rep.liu_pass = rep.min_liu_margin > 0.0;
    rep.strengthen_pass = rep.min_strengthen_margin > 0.0;
    return rep;
}

DissipationIdentity lax_dissipation_identity(const ShockCurve& curve, double s,
                                             const StateVector& v, double quad_tol) {
    const SystemDescriptor& sys = curve.system();
    const auto p = curve.at(s);
    DissipationIdentity out;
    out.lhs = rel_flux(sys, p.state, v) - p.sigma * rel_entropy(sys, p.state, v);
    const auto integrand = [&](double tau) {
        const auto q = curve.at(tau);
        const auto [tan, sp] = curve.tangent_sigma_prime(tau);
        (void)tan;
        return sp * rel_entropy(sys, curve.base(), q.state);
    };
    const double integral = num::adaptive_simpson(integrand, 0.0, s, quad_tol);
    out.rhs = rel_flux(sys, curve.base(), v) - p.sigma * rel_entropy(sys, curve.base(), v) +
              integral;
    out.gap = out.lhs - out.rhs;
    return out;
}

DissipationIdentity lax_dissipation_identity(const SystemDescriptor& sys,
                                             const StateVector& base, double s,
                                             const StateVector& v) {
    const int n = sys.dim == 1 ? 64 : 320;
    const ShockCurve curve = shock_curve(sys, base, ShockFamily::one_shock, s, n);
    return lax_dissipation_identity(curve, s, v);
}

DissipationInequality lax_dissipation_inequality(const SystemDescriptor& sys,
                                                 const ShockTriple& triple,
                                                 const StateVector& v, double tol) {
    DissipationInequality out;
    out.lhs = rel_flux(sys, triple.right, v) - triple.sigma * rel_entropy(sys, triple.right, v);
    out.rhs = rel_flux(sys, triple.left, v) - triple.sigma * rel_entropy(sys, triple.left, v);
    out.satisfied = out.lhs <= out.rhs + tol;
    return out;
}

DipernaResult diperna_dissipation(const ShockCurve& curve, double s, double s0,
                                  double quad_tol) {
    const double smax = curve.s_max();
    if (s0 < 0.0 || s0 > smax || s < 0.0 || s > smax)
        fail(ErrorCode::out_of_range, "diperna_dissipation: parameter outside the curve range");
    const SystemDescriptor& sys = curve.system();
    const auto ps = curve.at(s);
    const auto p0 = curve.at(s0);

    DipernaResult out;
    out.D = rel_flux(sys, ps.state, p0.state) - ps.sigma * rel_entropy(sys, ps.state, p0.state);
    const double eta0 = rel_entropy(sys, curve.base(), p0.state);
    const auto integrand = [&](double tau) {
        const auto q = curve.at(tau);
        const auto [tan, sp] = curve.tangent_sigma_prime(tau);
        (void)tan;
        return sp * (rel_entropy(sys, curve.base(), q.state) - eta0);
    };
    out.D_integral = num::adaptive_simpson(integrand, s0, s, quad_tol);

    // sampled two-regime constants over the curve grid against s0
    const auto& pts = curve.points();
    std::vector<double> gaps, dsig, dval;
    for (const auto& p : pts) {
        const double dd = std::abs(p.s - s0);
        if (dd < 1e-6 * std::max(1.0, smax)) continue;
        const double dsg = std::abs(p.sigma - p0.sigma);
        if (dsg < 1e-14) continue;
        const double D =
            rel_flux(sys, p.state, p0.state) - p.sigma * rel_entropy(sys, p.state, p0.state);
        gaps.push_back(dd);
        dsig.push_back(dsg);
        dval.push_back(D);
    }
    double best_kappa = 0.0, best_delta = 0.0;
    for (int cand = 1; cand <= 16; ++cand) {
        const double delta = smax * cand / 16.0;
        double kappa = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < gaps.size(); ++i) {
            const double denom = gaps[i] <= delta ? dsig[i] * dsig[i] : dsig[i];
            kappa = std::min(kappa, -dval[i] / denom);
        }
        if (std::isfinite(kappa) && kappa > best_kappa) {
            best_kappa = kappa;
            best_delta = delta;
        }
    }
    out.kappa = best_kappa;
    out.delta = best_delta;
    return out;
}

} // namespace shocklab
