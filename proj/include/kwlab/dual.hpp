#pragma once

#include <array>
#include <cmath>
#include <type_traits>

namespace kwlab {

/// Forward-mode dual number with N directional derivatives. Nesting
/// Dual<Dual<T,1>,1> yields second derivatives.
template <typename T, int N = 1>
struct Dual {
    T v{};
    std::array<T, N> d{};

    Dual() = default;
    Dual(const T& value) : v(value) {}  // NOLINT: implicit lift of constants
    template <typename S, typename = std::enable_if_t<std::is_arithmetic_v<S> && !std::is_same_v<S, T>>>
    Dual(S value) : v(T(value)) {}  // NOLINT
    Dual(const T& value, const std::array<T, N>& grad) : v(value), d(grad) {}

    /// Independent variable number k of N.
    static Dual variable(const T& value, int k) {
        Dual x(value);
        x.d[k] = T(1);
        return x;
    }

    Dual& operator+=(const Dual& o) {
        v += o.v;
        for (int i = 0; i < N; ++i) d[i] += o.d[i];
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        v -= o.v;
        for (int i = 0; i < N; ++i) d[i] -= o.d[i];
        return *this;
    }
    Dual& operator*=(const Dual& o) {
        for (int i = 0; i < N; ++i) d[i] = d[i] * o.v + v * o.d[i];
        v *= o.v;
        return *this;
    }
    Dual& operator/=(const Dual& o) {
        const T inv = T(1) / o.v;
        const T q = v * inv;
        for (int i = 0; i < N; ++i) d[i] = (d[i] - q * o.d[i]) * inv;
        v = q;
        return *this;
    }

    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
    friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
    friend Dual operator-(Dual a) {
        a.v = -a.v;
        for (auto& x : a.d) x = -x;
        return a;
    }
    friend bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
    friend bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
};

namespace detail {
template <typename T, int N, typename F0, typename F1>
Dual<T, N> chain(const Dual<T, N>& x, F0 f, F1 df) {
    Dual<T, N> r(f(x.v));
    const T s = df(x.v);
    for (int i = 0; i < N; ++i) r.d[i] = s * x.d[i];
    return r;
}
}  // namespace detail

template <typename T, int N>
Dual<T, N> exp(const Dual<T, N>& x) {
    using std::exp;
    const T e = exp(x.v);
    Dual<T, N> r(e);
    for (int i = 0; i < N; ++i) r.d[i] = e * x.d[i];
    return r;
}

template <typename T, int N>
Dual<T, N> expm1(const Dual<T, N>& x) {
    using std::exp;
    using std::expm1;
    Dual<T, N> r(expm1(x.v));
    const T e = exp(x.v);
    for (int i = 0; i < N; ++i) r.d[i] = e * x.d[i];
    return r;
}

template <typename T, int N>
Dual<T, N> sqrt(const Dual<T, N>& x) {
    using std::sqrt;
    const T s = sqrt(x.v);
    Dual<T, N> r(s);
    for (int i = 0; i < N; ++i) r.d[i] = x.d[i] / (T(2) * s);
    return r;
}

template <typename T, int N>
Dual<T, N> log(const Dual<T, N>& x) {
    using std::log;
    Dual<T, N> r(log(x.v));
    for (int i = 0; i < N; ++i) r.d[i] = x.d[i] / x.v;
    return r;
}

template <typename T, int N>
Dual<T, N> sin(const Dual<T, N>& x) {
    using std::cos;
    using std::sin;
    Dual<T, N> r(sin(x.v));
    const T c = cos(x.v);
    for (int i = 0; i < N; ++i) r.d[i] = c * x.d[i];
    return r;
}

template <typename T, int N>
Dual<T, N> cos(const Dual<T, N>& x) {
    using std::cos;
    using std::sin;
    Dual<T, N> r(cos(x.v));
    const T s = -sin(x.v);
    for (int i = 0; i < N; ++i) r.d[i] = s * x.d[i];
    return r;
}

/// Value, first and second derivative of a scalar function at a point.
template <typename T>
struct Jet2 {
    T value{};
    T d1{};
    T d2{};
};

/// Evaluates f and its first two derivatives at y via nested duals.
template <typename T, typename F>
Jet2<T> jet2(F&& f, T y) {
    using Inner = Dual<T, 1>;
    using Outer = Dual<Inner, 1>;
    Outer x(Inner(y, {T(1)}), {Inner(T(1))});
    const Outer r = f(x);
    return {r.v.v, r.v.d[0], r.d[0].d[0]};
}

}  // namespace kwlab
