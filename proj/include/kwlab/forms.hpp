#pragma once

// su(2)-valued differential forms over an orthonormal coframe of four
// generators. Generators 0,1,2 are tangential (e1,e2,e3 on S^3, or
// dx1,dx2,dx3 on the half-space); generator 3 is dy. A blade is a bitmask
// over the generators, ordered increasingly.

#include <array>
#include <bit>
#include <cstdint>

#include "kwlab/su2.hpp"

namespace kwlab {

using Blade = std::uint8_t;

inline constexpr int kGenerators = 4;
inline constexpr int kBlades = 16;
inline constexpr int kNormal = 3;
inline constexpr Blade kNormalBit = 1u << kNormal;
inline constexpr Blade kTangentialVolume = 0b0111;
inline constexpr Blade kVolume = 0b1111;

constexpr int degree(Blade b) { return std::popcount(static_cast<unsigned>(b)); }
constexpr Blade blade(int g) { return static_cast<Blade>(1u << g); }
constexpr Blade blade(int g, int h) { return static_cast<Blade>((1u << g) | (1u << h)); }

/// Sign of e_a ^ e_b relative to the ordered blade a|b; 0 when they overlap.
constexpr int wedge_sign(Blade a, Blade b) {
    if (a & b) return 0;
    int swaps = 0;
    for (int g = 0; g < kGenerators; ++g)
        if (b & (1u << g)) swaps += std::popcount(static_cast<unsigned>(a) >> (g + 1));
    return (swaps % 2) ? -1 : 1;
}

/// Real-valued form (used for traces and structure equations).
template <typename T>
struct ScalarForm {
    std::array<T, kBlades> c{};

    T& operator[](Blade b) { return c[b]; }
    const T& operator[](Blade b) const { return c[b]; }

    ScalarForm& operator+=(const ScalarForm& o) {
        for (int i = 0; i < kBlades; ++i) c[i] += o.c[i];
        return *this;
    }
    friend ScalarForm operator+(ScalarForm a, const ScalarForm& b) { return a += b; }
    friend ScalarForm operator*(const T& s, ScalarForm a) {
        for (auto& x : a.c) x *= s;
        return a;
    }
};

/// su(2)-valued form; coefficient c[b] multiplies the blade b.
template <typename T>
struct Form {
    std::array<Su2<T>, kBlades> c{};

    Su2<T>& operator[](Blade b) { return c[b]; }
    const Su2<T>& operator[](Blade b) const { return c[b]; }

    Form& operator+=(const Form& o) {
        for (int i = 0; i < kBlades; ++i) c[i] += o.c[i];
        return *this;
    }
    Form& operator-=(const Form& o) {
        for (int i = 0; i < kBlades; ++i) c[i] -= o.c[i];
        return *this;
    }
    Form& operator*=(const T& s) {
        for (auto& x : c) x *= s;
        return *this;
    }
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator-(Form a) { return a *= T(-1); }
    friend Form operator*(const T& s, Form a) { return a *= s; }
    friend bool operator==(const Form& a, const Form& b) { return a.c == b.c; }

    /// Keeps only the blades of the given degree.
    Form part(int k) const {
        Form r;
        for (int b = 0; b < kBlades; ++b)
            if (degree(static_cast<Blade>(b)) == k) r.c[b] = c[b];
        return r;
    }
    /// Blades without dy.
    Form tangential() const {
        Form r;
        for (int b = 0; b < kBlades; ++b)
            if (!(b & kNormalBit)) r.c[b] = c[b];
        return r;
    }
    Form normal() const {
        Form r;
        for (int b = 0; b < kBlades; ++b)
            if (b & kNormalBit) r.c[b] = c[b];
        return r;
    }

    template <typename Fn>
    Form map(Fn&& f) const {
        Form r;
        for (int b = 0; b < kBlades; ++b) r.c[b] = f(c[b]);
        return r;
    }
};

/// Graded bracket [a ^ b] = sum [a_I, b_J] e_I ^ e_J.
template <typename T>
Form<T> bracket_wedge(const Form<T>& a, const Form<T>& b) {
    Form<T> r;
    for (int i = 0; i < kBlades; ++i) {
        if (a.c[i].is_zero()) continue;
        for (int j = 0; j < kBlades; ++j) {
            const int s = wedge_sign(static_cast<Blade>(i), static_cast<Blade>(j));
            if (s == 0 || b.c[j].is_zero()) continue;
            const Su2<T> br = bracket(a.c[i], b.c[j]);
            if (s > 0)
                r.c[i | j] += br;
            else
                r.c[i | j] -= br;
        }
    }
    return r;
}

/// a ^ a for an odd form, which equals half the graded bracket.
template <typename T>
Form<T> square(const Form<T>& a) {
    Form<T> r = bracket_wedge(a, a);
    r *= T(1) / T(2);
    return r;
}

/// tr(a ^ b) in the defining representation, using tr(uv) = -<u,v>.
template <typename T>
ScalarForm<T> trace_wedge(const Form<T>& a, const Form<T>& b) {
    ScalarForm<T> r;
    for (int i = 0; i < kBlades; ++i) {
        if (a.c[i].is_zero()) continue;
        for (int j = 0; j < kBlades; ++j) {
            const int s = wedge_sign(static_cast<Blade>(i), static_cast<Blade>(j));
            if (s == 0) continue;
            r.c[i | j] -= T(s) * inner(a.c[i], b.c[j]);
        }
    }
    return r;
}

/// Pointwise norm |a|^2 = -tr(a ^ *a) for an orthonormal coframe.
template <typename T>
T norm_sq(const Form<T>& a) {
    T s(0);
    for (const auto& x : a.c) s += norm_sq(x);
    return s;
}

template <typename T>
T inner(const Form<T>& a, const Form<T>& b) {
    T s(0);
    for (int i = 0; i < kBlades; ++i) s += inner(a.c[i], b.c[i]);
    return s;
}

/// Sign choices of the four-dimensional Hodge star relative to the base
/// orientation. `normal_pair` acts on dy^e_a, `tangential_pair` on e_b^e_c,
/// `odd` on 1- and 3-forms (and 0/4-forms).
struct HodgeSigns {
    int normal_pair = 1;
    int tangential_pair = 1;
    int odd = 1;
};

/// Base orientation of the four-dimensional star: +1 means dy^e1^e2^e3.
/// Defined out of line so a negative-control build can link a flipped value.
int hodge_base_orientation();

/// Hodge star on the orthonormal coframe with volume form
/// hodge_base_orientation() * dy^e1^e2^e3, modified by the sign choices.
template <typename T, typename Coeff>
std::array<Coeff, kBlades> hodge_coeffs(const std::array<Coeff, kBlades>& in, const HodgeSigns& signs) {
    // dy^e1^e2^e3 = -(e1^e2^e3^dy) in blade order.
    const int orient = -hodge_base_orientation();
    std::array<Coeff, kBlades> out{};
    for (int i = 0; i < kBlades; ++i) {
        const Blade b = static_cast<Blade>(i);
        const Blade comp = static_cast<Blade>(kVolume ^ b);
        int s = orient * wedge_sign(b, comp);
        if (degree(b) == 2)
            s *= (b & kNormalBit) ? signs.normal_pair : signs.tangential_pair;
        else
            s *= signs.odd;
        out[comp] = (s > 0) ? in[i] : Coeff(-in[i]);
    }
    return out;
}

template <typename T>
Form<T> hodge(const Form<T>& a, const HodgeSigns& signs) {
    Form<T> r;
    r.c = hodge_coeffs<T>(a.c, signs);
    return r;
}

template <typename T>
ScalarForm<T> hodge(const ScalarForm<T>& a, const HodgeSigns& signs) {
    ScalarForm<T> r;
    r.c = hodge_coeffs<T>(a.c, signs);
    return r;
}

/// Constant-coefficient structure equations de_g = sum_{h<k} D[g][h|k] e_h ^ e_k.
template <typename T>
struct Coframe {
    std::array<ScalarForm<T>, kGenerators> de{};

    /// Flat coordinate coframe.
    static Coframe flat() { return {}; }

    /// Round-sphere type coframe de_a = -c eps_abd e_b ^ e_d on the tangential generators.
    static Coframe sphere(const T& c) {
        Coframe f;
        for (int a = 0; a < 3; ++a) {
            const int b = (a + 1) % 3;
            const int d = (a + 2) % 3;
            // -c (e_b^e_d - e_d^e_b) = -2c e_b^e_d
            const int s = wedge_sign(blade(b), blade(d));
            f.de[a][blade(b, d)] = T(-2) * c * T(s);
        }
        return f;
    }

    /// d(e_I) via the Leibniz rule.
    ScalarForm<T> d_blade(Blade I) const {
        ScalarForm<T> r;
        int position = 0;
        for (int g = 0; g < kGenerators; ++g) {
            if (!(I & (1u << g))) continue;
            // e_I = e_before ^ e_g ^ e_after, with before the generators < g in I.
            const Blade before = static_cast<Blade>(I & ((1u << g) - 1));
            const Blade after = static_cast<Blade>(I & ~((1u << (g + 1)) - 1));
            const int leibniz = (position % 2) ? -1 : 1;
            for (int k = 0; k < kBlades; ++k) {
                if (de[g].c[k] == T(0)) continue;
                const Blade kb = static_cast<Blade>(k);
                const int s1 = wedge_sign(before, kb);
                if (s1 == 0) continue;
                const int s2 = wedge_sign(static_cast<Blade>(before | kb), after);
                if (s2 == 0) continue;
                r.c[before | kb | after] += T(leibniz * s1 * s2) * de[g].c[k];
            }
            ++position;
        }
        return r;
    }
};

/// A form together with the frame derivatives X_mu of its coefficients.
template <typename T>
struct FormJet {
    Form<T> value;
    std::array<Form<T>, kGenerators> partial{};
};

/// Exterior derivative: sum_mu e_mu ^ X_mu(c_I) e_I + c_I d(e_I).
template <typename T>
Form<T> exterior_d(const FormJet<T>& f, const Coframe<T>& frame) {
    Form<T> r;
    for (int mu = 0; mu < kGenerators; ++mu) {
        const Blade m = blade(mu);
        for (int i = 0; i < kBlades; ++i) {
            const int s = wedge_sign(m, static_cast<Blade>(i));
            if (s == 0 || f.partial[mu].c[i].is_zero()) continue;
            if (s > 0)
                r.c[m | i] += f.partial[mu].c[i];
            else
                r.c[m | i] -= f.partial[mu].c[i];
        }
    }
    for (int i = 0; i < kBlades; ++i) {
        if (f.value.c[i].is_zero()) continue;
        const ScalarForm<T> dI = frame.d_blade(static_cast<Blade>(i));
        for (int k = 0; k < kBlades; ++k)
            if (dI.c[k] != T(0)) r.c[k] += dI.c[k] * f.value.c[i];
    }
    return r;
}

template <typename T>
FormJet<T> hodge(const FormJet<T>& f, const HodgeSigns& signs) {
    FormJet<T> r;
    r.value = hodge(f.value, signs);
    for (int mu = 0; mu < kGenerators; ++mu) r.partial[mu] = hodge(f.partial[mu], signs);
    return r;
}

/// Builds a 1-form from its four coefficients (index 3 is the dy coefficient).
template <typename T>
Form<T> one_form(const std::array<Su2<T>, kGenerators>& coeffs) {
    Form<T> f;
    for (int g = 0; g < kGenerators; ++g) f.c[blade(g)] = coeffs[g];
    return f;
}

}  // namespace kwlab
