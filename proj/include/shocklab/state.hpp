#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "shocklab/errors.hpp"

namespace shocklab {

/// Conserved state of a 1D system with up to three components.
/// m=1: (u), m=2: (rho, rho*u), m=3: (rho, rho*u, rho*E).
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(double u) : m_(1) { c_[0] = u; }
    StateVector(double a, double b) : m_(2) { c_[0] = a; c_[1] = b; }
    StateVector(double a, double b, double c) : m_(3) {
        c_[0] = a; c_[1] = b; c_[2] = c;
    }

    static StateVector zero(int m) {
        StateVector s;
        s.m_ = m;
        return s;
    }

    int size() const { return m_; }
    double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

    bool finite() const {
        for (int i = 0; i < m_; ++i)
            if (!std::isfinite(c_[static_cast<std::size_t>(i)])) return false;
        return true;
    }

    double norm() const {
        double s = 0;
        for (int i = 0; i < m_; ++i) s += c_[i] * c_[i];
        return std::sqrt(s);
    }

    double norm_inf() const {
        double s = 0;
        for (int i = 0; i < m_; ++i) s = std::max(s, std::abs(c_[i]));
        return s;
    }

    StateVector& operator+=(const StateVector& o) {
        for (int i = 0; i < m_; ++i) c_[i] += o.c_[i];
        return *this;
    }
    StateVector& operator-=(const StateVector& o) {
        for (int i = 0; i < m_; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    StateVector& operator*=(double k) {
        for (int i = 0; i < m_; ++i) c_[i] *= k;
        return *this;
    }

    friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
    friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
    friend StateVector operator*(double k, StateVector a) { return a *= k; }
    friend StateVector operator*(StateVector a, double k) { return a *= k; }

    friend double dot(const StateVector& a, const StateVector& b) {
        double s = 0;
        for (int i = 0; i < a.m_; ++i) s += a.c_[i] * b.c_[i];
        return s;
    }

    friend bool operator==(const StateVector& a, const StateVector& b) {
        if (a.m_ != b.m_) return false;
        for (int i = 0; i < a.m_; ++i)
            if (a.c_[i] != b.c_[i]) return false;
        return true;
    }

private:
    std::array<double, 3> c_{0.0, 0.0, 0.0};
    int m_ = 0;
};

inline double distance(const StateVector& a, const StateVector& b) {
    return (a - b).norm();
}

inline void require_finite(const StateVector& u, const char* where) {
    if (!u.finite()) fail(ErrorCode::invalid_state, std::string(where) + ": non-finite state component");
}

} // namespace shocklab
