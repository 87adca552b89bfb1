#pragma once

// Small numerical utilities shared across modules: low-discrepancy sampling,
// adaptive quadrature, least-squares line fit, Gauss nodes.

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "shocklab/errors.hpp"
#include "shocklab/state.hpp"

namespace shocklab::num {

/// Van der Corput radical inverse in the given base.
inline double radical_inverse(std::uint64_t i, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

/// d-dimensional Halton point (bases 2, 3, 5), index offset by seed.
inline void halton(std::uint64_t index, int dim, double* out) {
    static constexpr std::uint64_t bases[3] = {2, 3, 5};
    for (int k = 0; k < dim; ++k) out[k] = radical_inverse(index, bases[k]);
}

/// Quasi-random points in the unit ball of dimension m (1, 2 or 3).
/// Deterministic given (seed, count); seed offsets the Halton index.
inline std::vector<StateVector> unit_ball_points(int m, int count, std::uint64_t seed) {
    std::vector<StateVector> pts;
    pts.reserve(static_cast<std::size_t>(count));
    const std::uint64_t off = 13 + seed * 104729ull;
    double h[3];
    for (int i = 0; i < count; ++i) {
        halton(off + static_cast<std::uint64_t>(i), m, h);
        StateVector p = StateVector::zero(m);
        if (m == 1) {
            p[0] = 2.0 * h[0] - 1.0;
        } else if (m == 2) {
            const double r = std::sqrt(h[0]);
            const double th = 2.0 * M_PI * h[1];
            p[0] = r * std::cos(th);
            p[1] = r * std::sin(th);
        } else {
            const double r = std::cbrt(h[0]);
            const double cphi = 1.0 - 2.0 * h[1];
            const double sphi = std::sqrt(std::max(0.0, 1.0 - cphi * cphi));
            const double th = 2.0 * M_PI * h[2];
            p[0] = r * sphi * std::cos(th);
            p[1] = r * sphi * std::sin(th);
            p[2] = r * cphi;
        }
        pts.push_back(p);
    }
    return pts;
}

/// Deterministic, seed-independent points on the unit sphere of dimension m.
/// Axis directions first, then a uniform ring (m=2) or Fibonacci set (m=3).
inline std::vector<StateVector> unit_sphere_points(int m, int count) {
    std::vector<StateVector> pts;
    if (m == 1) {
        pts.push_back(StateVector(1.0));
        pts.push_back(StateVector(-1.0));
        return pts;
    }
    for (int i = 0; i < m; ++i) {
        StateVector p = StateVector::zero(m);
        p[i] = 1.0;
        pts.push_back(p);
        p[i] = -1.0;
        pts.push_back(p);
    }
    if (m == 2) {
        for (int i = 0; i < count; ++i) {
            const double th = 2.0 * M_PI * (i + 0.5) / count;
            pts.push_back(StateVector(std::cos(th), std::sin(th)));
        }
    } else {
        const double ga = M_PI * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < count; ++i) {
            const double z = 1.0 - 2.0 * (i + 0.5) / count;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            pts.push_back(StateVector(r * std::cos(ga * i), r * std::sin(ga * i), z));
        }
    }
    return pts;
}

/// Adaptive Simpson quadrature with absolute tolerance. The per-panel
/// tolerance halves on subdivision but never drops below a small fraction of
/// the requested one: integrands with roundoff-level jitter or micro-jumps
/// (Newton-polished curve evaluations, finite-difference derivatives) then
/// terminate with total error still of the requested order, instead of
/// refining into the noise forever.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int max_depth = 48) {
    struct Rec {
        static double go(const std::function<double(double)>& f, double a, double b, double fa,
                         double fm, double fb, double whole, double tol, double tol_floor,
                         int depth) {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            const double delta = left + right - whole;
            if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
            if (depth <= 0) fail(ErrorCode::accuracy, "adaptive quadrature: depth exhausted");
            const double child_tol = std::max(0.5 * tol, tol_floor);
            return go(f, a, m, fa, flm, fm, left, child_tol, tol_floor, depth - 1) +
                   go(f, m, b, fm, frm, fb, right, child_tol, tol_floor, depth - 1);
        }
    };
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return Rec::go(f, a, b, fa, fm, fb, whole, tol, 0.02 * tol, max_depth);
}

/// Least-squares line y = slope*x + intercept.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    int n = 0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    LineFit out;
    out.n = static_cast<int>(x.size());
    if (out.n < 2) return out;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double n = static_cast<double>(out.n);
    const double den = n * sxx - sx * sx;
    if (den == 0.0) return out;
    out.slope = (n * sxy - sx * sy) / den;
    out.intercept = (sy - out.slope * sx) / n;
    return out;
}

// 5-point Gauss-Legendre nodes and weights on [-1, 1].
inline constexpr double gauss5_x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                       0.5384693101056831, 0.9061798459386640};
inline constexpr double gauss5_w[5] = {0.2369268850561891, 0.4786286704993665,
                                       0.5688888888888889, 0.4786286704993665,
                                       0.2369268850561891};

/// Scalar bisection for the largest t in [0, hi] with pred(t) true.
/// pred(0) must be true; returns 0 if pred fails immediately above 0.
inline double bisect_largest(const std::function<bool(double)>& pred, double hi,
                             double rel_tol = 1e-10) {
    double lo = 0.0;
    if (pred(hi)) return hi;
    while (hi - lo > rel_tol * std::max(1.0, lo)) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

} // namespace shocklab::num
