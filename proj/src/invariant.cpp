#include "kwlab/invariant.hpp"

#include <algorithm>
#include <cmath>

#include "kwlab/error.hpp"
#include "kwlab/he.hpp"

namespace kwlab {

namespace {

using Tensor3 = std::array<std::array<std::array<Real, kGenerators>, kGenerators>, kGenerators>;

Form<Real> matrix_form(const Mat3<Real>& m) { return to_one_form(m).to_form(); }

Mat3<Real> rotate_columns(const Mat3<Real>& m, const Rotation& g) {
    Mat3<Real> r{};
    for (int a = 0; a < 3; ++a) {
        const Su2<Real> col = ad_rotate(g, Su2<Real>(m[0][a], m[1][a], m[2][a]));
        for (int i = 0; i < 3; ++i) r[i][a] = col[i];
    }
    return r;
}

Su2<Real> column(const Mat3<Real>& m, int a) { return Su2<Real>(m[0][a], m[1][a], m[2][a]); }

}  // namespace

LeviCivita LeviCivita::from(const Coframe<Real>& frame) {
    LeviCivita lc;
    // de_l(X_m, X_n) = -e_l([X_m, X_n]) for an invariant frame.
    for (int l = 0; l < kGenerators; ++l)
        for (int m = 0; m < kGenerators; ++m)
            for (int n = m + 1; n < kGenerators; ++n) {
                const Real d = frame.de[l][blade(m, n)];
                lc.structure[m][n][l] = -d;
                lc.structure[n][m][l] = d;
            }
    const Tensor3& c = lc.structure;
    for (int m = 0; m < kGenerators; ++m)
        for (int n = 0; n < kGenerators; ++n)
            for (int l = 0; l < kGenerators; ++l)
                lc.gamma[m][n][l] = (c[m][n][l] - c[n][l][m] + c[l][m][n]) / 2;
    return lc;
}

std::array<std::array<Real, kGenerators>, kGenerators> LeviCivita::ricci() const {
    // nabla_m X_n = gamma[m][n][k] X_k with constant coefficients, so
    // nabla_m nabla_n X_p = gamma[n][p][k] gamma[m][k][q] X_q.
    auto second = [&](int m, int n, int p, int q) {
        Real s = 0;
        for (int k = 0; k < kGenerators; ++k) s += gamma[n][p][k] * gamma[m][k][q];
        return s;
    };
    auto riemann = [&](int m, int n, int p, int q) {  // <R(X_m,X_n)X_p, X_q>
        Real r = second(m, n, p, q) - second(n, m, p, q);
        for (int k = 0; k < kGenerators; ++k) r -= structure[m][n][k] * gamma[k][p][q];
        return r;
    };
    std::array<std::array<Real, kGenerators>, kGenerators> ric{};
    for (int j = 0; j < kGenerators; ++j)
        for (int k = 0; k < kGenerators; ++k)
            for (int i = 0; i < kGenerators; ++i) ric[j][k] += riemann(i, j, k, i);
    return ric;
}

Real ricci_form(const std::array<std::array<Real, kGenerators>, kGenerators>& ric, const InvariantOneForm<Real>& phi) {
    Real s = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) s += ric[a][b] * inner(phi.column(a), phi.column(b));
    return s;
}

CheckReport ricci_check(const GeometryConventions& conv) {
    const auto ric = LeviCivita::from(conv.frame<Real>()).ricci();
    const auto omega = InvariantOneForm<Real>::omega();
    const auto mu1 = InvariantOneForm<Real>::unit(1, 2) - InvariantOneForm<Real>::unit(2, 1);
    const Real r_omega = ricci_form(ric, omega) / norm_sq(omega);
    const Real r_mu = ricci_form(ric, mu1) / norm_sq(mu1);
    Real tensor_dev = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) tensor_dev = std::max(tensor_dev, std::fabs(ric[a][b] - (a == b ? 2 : 0)));
    const double tol = 1e-15;
    CheckReport r = CheckReport::compare("ricci", "Ric(phi,phi) = 2|phi|^2 on the invariant metric",
                                         static_cast<double>(r_omega), 2.0, tol, Provenance::Published);
    r.detail["ratio_omega"] = static_cast<double>(r_omega);
    r.detail["ratio_mu1"] = static_cast<double>(r_mu);
    r.detail["max_tensor_deviation"] = static_cast<double>(tensor_dev);
    if (std::fabs(r_mu - 2) > tol || tensor_dev > tol) r.status = Status::Fail;
    return r;
}

MatrixProfile scaled_matrix(ScalarProfile f, const Mat3<Real>& m) {
    return [f = std::move(f), m](Real y) {
        const Jet2<Real> j = f(y);
        MatJet r;
        for (int i = 0; i < 3; ++i)
            for (int a = 0; a < 3; ++a) {
                r.value[i][a] = j.value * m[i][a];
                r.d1[i][a] = j.d1 * m[i][a];
                r.d2[i][a] = j.d2 * m[i][a];
            }
        return r;
    };
}

MatrixProfile omega_multiple(ScalarProfile f) { return scaled_matrix(std::move(f), identity3<Real>()); }

MatrixProfile zero_matrix_profile() {
    return [](Real) { return MatJet{}; };
}

Su2Profile zero_su2_profile() {
    return [](Real) { return Su2Jet{}; };
}

MatrixProfile sum(MatrixProfile a, MatrixProfile b) {
    return [a = std::move(a), b = std::move(b)](Real y) {
        MatJet x = a(y);
        const MatJet z = b(y);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) {
                x.value[i][k] += z.value[i][k];
                x.d1[i][k] += z.d1[i][k];
                x.d2[i][k] += z.d2[i][k];
            }
        return x;
    };
}

FieldJet InvariantField::at(Real y) const {
    FieldJet f;
    f.y = y;
    f.a = a(y);
    f.phi = phi(y);
    if (phi_y) f.phi_y = phi_y(y);
    return f;
}

InvariantField make_field(std::string name, MatrixProfile a, MatrixProfile phi, Su2Profile phi_y) {
    InvariantField f;
    f.name = std::move(name);
    f.a = a ? std::move(a) : zero_matrix_profile();
    f.phi = phi ? std::move(phi) : zero_matrix_profile();
    f.phi_y = phi_y ? std::move(phi_y) : zero_su2_profile();
    return f;
}

InvariantOneForm<Real> to_one_form(const Mat3<Real>& m) { return InvariantOneForm<Real>{m}; }

FormJet<Real> connection_jet(const FieldJet& f) {
    FormJet<Real> j;
    j.value = matrix_form(f.a.value);
    j.partial[kNormal] = matrix_form(f.a.d1);
    return j;
}

FormJet<Real> higgs_jet(const FieldJet& f) {
    FormJet<Real> j;
    j.value = matrix_form(f.phi.value);
    j.value[blade(kNormal)] = f.phi_y.value;
    j.partial[kNormal] = matrix_form(f.phi.d1);
    j.partial[kNormal][blade(kNormal)] = f.phi_y.d1;
    return j;
}

InvariantTwoForm<Real> curvature(const GeometryConventions& conv, const MatrixProfile& a, Real y) {
    FieldJet f;
    f.y = y;
    f.a = a(y);
    return InvariantTwoForm<Real>::from_form(curvature_form(connection_jet(f), conv.frame<Real>()));
}

Real InvariantResidual::norm() const { return std::sqrt(norm_sq(first) + second * second); }

InvariantResidual kw_residual(const GeometryConventions& conv, const FieldJet& jet) {
    if (!(jet.y > 0)) throw DomainError("boundary evaluation");
    const KwResidual<Real> k = kw_equations(connection_jet(jet), higgs_jet(jet), conv.frame<Real>(), conv.hodge());
    InvariantResidual r;
    r.first = InvariantTwoForm<Real>::from_form(k.first);
    // The first equation lives in degree 2; anything elsewhere is an engine defect.
    const Real stray = norm_sq(k.first) - norm_sq(k.first.part(2));
    if (stray > 0) throw NumericalError("residual has components outside degree 2");
    r.second = std::sqrt(norm_sq(k.second));
    return r;
}

InvariantResidual kw_residual(const GeometryConventions& conv, const InvariantField& field, Real y) {
    if (!(y > 0)) throw DomainError("boundary evaluation");
    return kw_residual(conv, field.at(y));
}

InvariantField rotate(const InvariantField& field, const Rotation& g) {
    auto rot = [g](const MatrixProfile& p) -> MatrixProfile {
        return [p, g](Real y) {
            const MatJet j = p(y);
            return MatJet{rotate_columns(j.value, g), rotate_columns(j.d1, g), rotate_columns(j.d2, g)};
        };
    };
    InvariantField r = field;
    r.name = field.name + "/rotated";
    r.a = rot(field.a);
    r.phi = rot(field.phi);
    auto py = field.phi_y;
    r.phi_y = [py, g](Real y) {
        const Su2Jet j = py(y);
        return Su2Jet{ad_rotate(g, j.value), ad_rotate(g, j.d1), ad_rotate(g, j.d2)};
    };
    return r;
}

Real taubes_lhs(const GeometryConventions& conv, const InvariantField& field, Real y) {
    (void)conv;  // |phi_y|^2 is constant on S^3, so the Laplacian term drops for every convention
    const FieldJet f = field.at(y);
    // (1/2)(-d_y^2)|phi_y|^2 + |d_y phi_y|^2 = -<phi_y'', phi_y>
    Real s = -inner(f.phi_y.d2, f.phi_y.value);
    for (int a = 0; a < 3; ++a) {
        s += norm_sq(bracket(column(f.a.value, a), f.phi_y.value));
        s += 2 * norm_sq(bracket(f.phi_y.value, column(f.phi.value, a)));
    }
    return s;
}

std::vector<Real> log_grid(Real lo, Real hi, int n) {
    if (n < 2 || !(lo > 0) || !(hi > lo)) throw DomainError("log_grid needs 0 < lo < hi and n >= 2");
    std::vector<Real> g(n);
    const Real l0 = std::log(lo);
    const Real l1 = std::log(hi);
    for (int i = 0; i < n; ++i) g[i] = std::exp(l0 + (l1 - l0) * i / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

CalibrationResult calibrate(Real residual_tolerance) {
    CalibrationResult res;
    const InvariantField he = he_field();
    const std::vector<Real> grid = log_grid(1e-3L, 30, 40);
    for (int c : {1, -1, 2, -2})
        for (int s1 : {1, -1})
            for (int s2 : {1, -1}) {
                CalibrationCandidate cand;
                cand.conv = {c, s1, s2};
                cand.ricci_ok = ricci_check(cand.conv).passed();
                for (Real y : grid) cand.he_residual = std::max(cand.he_residual, kw_residual(cand.conv, he, y).norm());
                cand.accepted = cand.ricci_ok && cand.he_residual <= residual_tolerance;
                if (cand.accepted) {
                    if (res.accepted_count == 0) res.chosen = cand.conv;
                    ++res.accepted_count;
                }
                res.candidates.push_back(cand);
            }
    return res;
}

}  // namespace kwlab
