#pragma once

// Left-invariant su(2)-valued forms on S^3 x R+. A 1-form is stored as a
// 3x3 matrix c with u = sum_{i,a} c[i][a] t_i e_a; a tangential 2-form is
// stored through its *3-dual (standard orientation e1^e2^e3 of S^3).

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kwlab/dual.hpp"
#include "kwlab/forms.hpp"
#include "kwlab/kw.hpp"
#include "kwlab/report.hpp"

namespace kwlab {

template <typename T>
using Mat3 = std::array<std::array<T, 3>, 3>;

template <typename T>
Mat3<T> identity3() {
    Mat3<T> m{};
    for (int i = 0; i < 3; ++i) m[i][i] = T(1);
    return m;
}

/// Coframe structure constant and four-dimensional orientation signs.
struct GeometryConventions {
    int c = 1;
    int s1 = 1;  // star on dy^e_a
    int s2 = 1;  // star on e_b^e_c

    HodgeSigns hodge() const { return {s1, s2, s1}; }
    template <typename T>
    Coframe<T> frame() const {
        return Coframe<T>::sphere(T(c));
    }
    friend bool operator==(const GeometryConventions&, const GeometryConventions&) = default;
};

/// The convention of record: de_a = -eps_abc e_b^e_c, volume dy^e1^e2^e3.
inline constexpr GeometryConventions kGoldenConventions{1, 1, 1};

template <typename T>
struct InvariantOneForm {
    Mat3<T> c{};

    static InvariantOneForm omega() { return {identity3<T>()}; }
    /// t_i e_a
    static InvariantOneForm unit(int i, int a) {
        InvariantOneForm u;
        u.c[i][a] = T(1);
        return u;
    }

    InvariantOneForm& operator+=(const InvariantOneForm& o) {
        for (int i = 0; i < 3; ++i)
            for (int a = 0; a < 3; ++a) c[i][a] += o.c[i][a];
        return *this;
    }
    InvariantOneForm& operator-=(const InvariantOneForm& o) {
        for (int i = 0; i < 3; ++i)
            for (int a = 0; a < 3; ++a) c[i][a] -= o.c[i][a];
        return *this;
    }
    InvariantOneForm& operator*=(const T& s) {
        for (auto& row : c)
            for (auto& x : row) x *= s;
        return *this;
    }
    friend InvariantOneForm operator+(InvariantOneForm a, const InvariantOneForm& b) { return a += b; }
    friend InvariantOneForm operator-(InvariantOneForm a, const InvariantOneForm& b) { return a -= b; }
    friend InvariantOneForm operator*(const T& s, InvariantOneForm a) { return a *= s; }
    friend bool operator==(const InvariantOneForm& a, const InvariantOneForm& b) { return a.c == b.c; }

    /// su(2) coefficient of e_a.
    Su2<T> column(int a) const { return Su2<T>(c[0][a], c[1][a], c[2][a]); }

    Form<T> to_form() const {
        Form<T> f;
        for (int a = 0; a < 3; ++a) f[blade(a)] = column(a);
        return f;
    }
    static InvariantOneForm from_tangential(const Form<T>& f) {
        InvariantOneForm u;
        for (int a = 0; a < 3; ++a)
            for (int i = 0; i < 3; ++i) u.c[i][a] = f[blade(a)][i];
        return u;
    }
};

template <typename T>
T inner(const InvariantOneForm<T>& u, const InvariantOneForm<T>& v) {
    T s(0);
    for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 3; ++a) s += u.c[i][a] * v.c[i][a];
    return s / T(2);
}

template <typename T>
T norm_sq(const InvariantOneForm<T>& u) {
    return inner(u, u);
}

/// Blade of *3 e_a = e_{a+1} ^ e_{a+2} and its sign in blade order.
inline std::pair<Blade, int> star3_blade(int a) {
    const int b = (a + 1) % 3;
    const int d = (a + 2) % 3;
    return {blade(b, d), wedge_sign(blade(b), blade(d))};
}

/// Invariant 2-form: tangential part via its *3-dual, normal part as the
/// coefficient 1-form of dy ^ (.).
template <typename T>
struct InvariantTwoForm {
    InvariantOneForm<T> tangential_dual;
    InvariantOneForm<T> normal;

    Form<T> to_form() const {
        Form<T> f;
        for (int a = 0; a < 3; ++a) {
            const auto [b, s] = star3_blade(a);
            f[b] = T(s) * tangential_dual.column(a);
            // dy ^ e_a = -(e_a ^ dy)
            f[static_cast<Blade>(blade(a) | kNormalBit)] = T(-1) * normal.column(a);
        }
        return f;
    }

    /// Reads the 2-form part of f.
    static InvariantTwoForm from_form(const Form<T>& f) {
        InvariantTwoForm r;
        for (int a = 0; a < 3; ++a) {
            const auto [b, s] = star3_blade(a);
            const Su2<T> tang = T(s) * f[b];
            const Su2<T> nrm = T(-1) * f[static_cast<Blade>(blade(a) | kNormalBit)];
            for (int i = 0; i < 3; ++i) {
                r.tangential_dual.c[i][a] = tang[i];
                r.normal.c[i][a] = nrm[i];
            }
        }
        return r;
    }
};

template <typename T>
T norm_sq(const InvariantTwoForm<T>& w) {
    return norm_sq(w.tangential_dual) + norm_sq(w.normal);
}

/// [u ^ v] = u^v + v^u.
template <typename T>
InvariantTwoForm<T> wedge_bracket(const InvariantOneForm<T>& u, const InvariantOneForm<T>& v) {
    return InvariantTwoForm<T>::from_form(bracket_wedge(u.to_form(), v.to_form()));
}

/// u ^ u.
template <typename T>
InvariantTwoForm<T> wedge(const InvariantOneForm<T>& u) {
    return InvariantTwoForm<T>::from_form(square(u.to_form()));
}

/// *3 of a tangential 2-form under the given conventions.
template <typename T>
InvariantOneForm<T> star3(const GeometryConventions& conv, const InvariantTwoForm<T>& w) {
    InvariantOneForm<T> r = w.tangential_dual;
    r *= T(conv.s2);
    return r;
}

/// Exterior derivative of a constant-coefficient invariant 1-form.
template <typename T>
InvariantTwoForm<T> coframe_d(const GeometryConventions& conv, const InvariantOneForm<T>& u) {
    FormJet<T> j;
    j.value = u.to_form();
    return InvariantTwoForm<T>::from_form(exterior_d(j, conv.frame<T>()));
}

// ---------------------------------------------------------------------------
// Riemannian data of the invariant metric

/// Levi-Civita connection of a left-invariant orthonormal frame:
/// gamma[mu][nu][lambda] = <nabla_{X_mu} X_nu, X_lambda>.
struct LeviCivita {
    std::array<std::array<std::array<Real, kGenerators>, kGenerators>, kGenerators> gamma{};
    std::array<std::array<std::array<Real, kGenerators>, kGenerators>, kGenerators> structure{};  // [X_mu,X_nu]^lambda

    static LeviCivita from(const Coframe<Real>& frame);
    std::array<std::array<Real, kGenerators>, kGenerators> ricci() const;
};

/// Ric(phi, phi) = sum Ric_ab <phi_a, phi_b> for an invariant 1-form.
Real ricci_form(const std::array<std::array<Real, kGenerators>, kGenerators>& ric, const InvariantOneForm<Real>& phi);

/// Ricci of the invariant metric compared with 2 g, evaluated on omega and mu_1.
CheckReport ricci_check(const GeometryConventions& conv);

// ---------------------------------------------------------------------------
// y-dependent fields

struct MatJet {
    Mat3<Real> value{};
    Mat3<Real> d1{};
    Mat3<Real> d2{};
};

struct Su2Jet {
    Su2<Real> value;
    Su2<Real> d1;
    Su2<Real> d2;
};

using ScalarProfile = std::function<Jet2<Real>(Real)>;
using MatrixProfile = std::function<MatJet(Real)>;
using Su2Profile = std::function<Su2Jet(Real)>;

/// Profile f(y) * m for a fixed matrix m.
MatrixProfile scaled_matrix(ScalarProfile f, const Mat3<Real>& m);
/// f(y) * omega.
MatrixProfile omega_multiple(ScalarProfile f);
MatrixProfile zero_matrix_profile();
Su2Profile zero_su2_profile();
MatrixProfile sum(MatrixProfile a, MatrixProfile b);

/// Value and derivatives of all profiles at one y.
struct FieldJet {
    Real y = 0;
    MatJet a;
    MatJet phi;
    Su2Jet phi_y;
};

/// Left-invariant configuration on S^3 x R+ in the gauge A_y = 0.
struct InvariantField {
    std::string name;
    MatrixProfile a;
    MatrixProfile phi;
    Su2Profile phi_y;

    FieldJet at(Real y) const;
};

InvariantField make_field(std::string name, MatrixProfile a, MatrixProfile phi, Su2Profile phi_y = {});

/// Jets of A (no dy part) and phi (tangential plus phi_y dy) at a FieldJet.
FormJet<Real> connection_jet(const FieldJet& f);
FormJet<Real> higgs_jet(const FieldJet& f);
InvariantOneForm<Real> to_one_form(const Mat3<Real>& m);

/// F_A for a connection profile at y.
InvariantTwoForm<Real> curvature(const GeometryConventions& conv, const MatrixProfile& a, Real y);

struct InvariantResidual {
    InvariantTwoForm<Real> first;
    Real second = 0;  // |d_A * phi|

    Real norm() const;
};

/// Kapustin-Witten residual of an invariant field at y > 0.
InvariantResidual kw_residual(const GeometryConventions& conv, const InvariantField& field, Real y);
InvariantResidual kw_residual(const GeometryConventions& conv, const FieldJet& jet);

/// Applies the constant adjoint rotation to every su(2) coefficient.
InvariantField rotate(const InvariantField& field, const Rotation& g);

/// Pointwise left side of the Taubes identity for a field with phi_y.
Real taubes_lhs(const GeometryConventions& conv, const InvariantField& field, Real y);

// ---------------------------------------------------------------------------
// Convention calibration

struct CalibrationCandidate {
    GeometryConventions conv;
    bool ricci_ok = false;
    Real he_residual = 0;
    bool accepted = false;
};

struct CalibrationResult {
    std::vector<CalibrationCandidate> candidates;
    int accepted_count = 0;
    GeometryConventions chosen;

    bool unique() const { return accepted_count == 1; }
};

/// Searches c in {1,-1,2,-2}, s1,s2 in {1,-1} for Ric = 2g and a vanishing
/// residual of the closed-form decaying solution.
CalibrationResult calibrate(Real residual_tolerance = 1e-10L);

/// Log-spaced grid of n points on [lo, hi].
std::vector<Real> log_grid(Real lo, Real hi, int n);

}  // namespace kwlab
