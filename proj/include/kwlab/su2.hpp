#pragma once

#include <array>
#include <cmath>
#include <ostream>

#include <boost/multiprecision/cpp_int.hpp>

#include "kwlab/error.hpp"

namespace kwlab {

/// Scalar type for every floating-point computation in the library.
using Real = long double;
/// Exact scalar used by the identity suites.
using Rational = boost::multiprecision::cpp_rational;

/// Element of su(2) in coordinates over the basis {t1, t2, t3} with
/// [t_i, t_j] = eps_ijk t_k. In the defining representation t_i = -(i/2) sigma_i.
template <typename T>
struct Su2 {
    std::array<T, 3> c{T(0), T(0), T(0)};

    Su2() = default;
    Su2(T x, T y, T z) : c{x, y, z} {}

    static Su2 basis(int i) {
        Su2 u;
        u.c[i] = T(1);
        return u;
    }

    T& operator[](int i) { return c[i]; }
    const T& operator[](int i) const { return c[i]; }

    Su2& operator+=(const Su2& o) {
        for (int i = 0; i < 3; ++i) c[i] += o.c[i];
        return *this;
    }
    Su2& operator-=(const Su2& o) {
        for (int i = 0; i < 3; ++i) c[i] -= o.c[i];
        return *this;
    }
    Su2& operator*=(const T& s) {
        for (auto& x : c) x *= s;
        return *this;
    }

    friend Su2 operator+(Su2 a, const Su2& b) { return a += b; }
    friend Su2 operator-(Su2 a, const Su2& b) { return a -= b; }
    friend Su2 operator-(Su2 a) {
        for (auto& x : a.c) x = -x;
        return a;
    }
    friend Su2 operator*(const T& s, Su2 a) { return a *= s; }
    friend Su2 operator*(Su2 a, const T& s) { return a *= s; }
    friend bool operator==(const Su2& a, const Su2& b) { return a.c == b.c; }

    bool is_zero() const { return c[0] == T(0) && c[1] == T(0) && c[2] == T(0); }

    template <typename U>
    Su2<U> cast() const {
        return Su2<U>(static_cast<U>(c[0]), static_cast<U>(c[1]), static_cast<U>(c[2]));
    }
};

/// Lie bracket; in coordinates the cross product.
template <typename T>
Su2<T> bracket(const Su2<T>& u, const Su2<T>& v) {
    return Su2<T>(u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]);
}

/// Invariant inner product <u,v> = -tr(uv), so <t_i,t_j> = delta_ij / 2.
template <typename T>
T inner(const Su2<T>& u, const Su2<T>& v) {
    return (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]) / T(2);
}

template <typename T>
T norm_sq(const Su2<T>& u) {
    return inner(u, u);
}

inline Real norm(const Su2<Real>& u) { return std::sqrt(norm_sq(u)); }

/// Constant SU(2) conjugation, parameterized by axis and angle in the adjoint picture.
struct Rotation {
    Su2<Real> axis;
    Real angle = 0;
};

/// exp(angle * ad(axis/|axis|)) applied to u.
inline Su2<Real> ad_rotate(const Rotation& g, const Su2<Real>& u) {
    const Real len = std::sqrt(g.axis[0] * g.axis[0] + g.axis[1] * g.axis[1] + g.axis[2] * g.axis[2]);
    if (!(len > 0)) throw DomainError("degenerate rotation axis");
    const Su2<Real> n = (Real(1) / len) * g.axis;
    const Real cs = std::cos(g.angle);
    const Real sn = std::sin(g.angle);
    const Real along = n[0] * u[0] + n[1] * u[1] + n[2] * u[2];
    return cs * u + sn * bracket(n, u) + ((Real(1) - cs) * along) * n;
}

template <typename T>
std::ostream& operator<<(std::ostream& os, const Su2<T>& u) {
    return os << '(' << u[0] << ", " << u[1] << ", " << u[2] << ')';
}

}  // namespace kwlab
