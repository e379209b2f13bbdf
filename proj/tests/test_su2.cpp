#include <complex>

#include <doctest.h>

#include "kwlab/random.hpp"
#include "kwlab/su2.hpp"

using namespace kwlab;

namespace {

// Oracle: the defining representation t_i = -(i/2) sigma_i.
using C = std::complex<double>;
using M2 = std::array<std::array<C, 2>, 2>;

M2 matrix(const Su2<Real>& u) {
    const C i(0, 1);
    const double x = u[0], y = u[1], z = u[2];
    // -(i/2)(x sigma_1 + y sigma_2 + z sigma_3)
    return {{{-0.5 * i * z, -0.5 * i * C(x, -y)}, {-0.5 * i * C(x, y), 0.5 * i * z}}};
}

M2 mul(const M2& a, const M2& b) {
    M2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

C trace(const M2& a) { return a[0][0] + a[1][1]; }

Su2<Real> from_matrix(const M2& m) {
    // coefficient k = -2 tr(m t_k)
    Su2<Real> u;
    for (int k = 0; k < 3; ++k) u[k] = static_cast<Real>((-2.0 * trace(mul(m, matrix(Su2<Real>::basis(k))))).real());
    return u;
}

Su2<Real> random_su2(Rng& rng) { return {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)}; }

}  // namespace

TEST_SUITE("su2") {
    TEST_CASE("bracket matches the matrix commutator") {
        Rng rng(1);
        for (int n = 0; n < 50; ++n) {
            const Su2<Real> u = random_su2(rng), v = random_su2(rng);
            const M2 mu = matrix(u), mv = matrix(v);
            M2 comm = mul(mu, mv);
            const M2 vu = mul(mv, mu);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) comm[i][j] -= vu[i][j];
            CHECK(static_cast<double>(norm(bracket(u, v) - from_matrix(comm))) < 1e-13);
        }
    }

    TEST_CASE("inner product is minus the matrix trace") {
        Rng rng(2);
        for (int n = 0; n < 50; ++n) {
            const Su2<Real> u = random_su2(rng), v = random_su2(rng);
            const double oracle = -trace(mul(matrix(u), matrix(v))).real();
            CHECK(static_cast<double>(inner(u, v)) == doctest::Approx(oracle).epsilon(1e-14));
        }
    }

    TEST_CASE("exact rational bracket table") {
        using R = Su2<Rational>;
        CHECK(bracket(R::basis(0), R::basis(1)) == R::basis(2));
        CHECK(bracket(R::basis(1), R::basis(2)) == R::basis(0));
        CHECK(bracket(R::basis(2), R::basis(0)) == R::basis(1));
        CHECK(bracket(R::basis(1), R::basis(0)) == Rational(-1) * R::basis(2));
        CHECK(inner(R::basis(0), R::basis(0)) == Rational(1, 2));
        CHECK(inner(R::basis(0), R::basis(2)) == 0);
    }

    TEST_CASE("ad_rotate agrees with SU(2) conjugation") {
        // g = exp(theta n.t) = cos(theta/2) - i sin(theta/2) n.sigma; g X g^-1.
        Rng rng(3);
        for (int n = 0; n < 30; ++n) {
            Su2<Real> axis = random_su2(rng);
            const Real theta = rng.uniform(-3, 3);
            const Real len = norm(axis) * std::sqrt(Real(2));  // Euclidean length
            const Su2<Real> nh = (Real(1) / len) * axis;
            const M2 nt = matrix(nh);  // -(i/2) n.sigma
            const double c = std::cos(static_cast<double>(theta) / 2), s = std::sin(static_cast<double>(theta) / 2);
            M2 g{}, ginv{};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    g[i][j] = (i == j ? c : 0.0) + 2.0 * s * nt[i][j];
                    ginv[i][j] = (i == j ? c : 0.0) - 2.0 * s * nt[i][j];
                }
            const Su2<Real> u = random_su2(rng);
            const Su2<Real> oracle = from_matrix(mul(mul(g, matrix(u)), ginv));
            CHECK(static_cast<double>(norm(ad_rotate({axis, theta}, u) - oracle)) < 1e-13);
        }
    }

    TEST_CASE("degenerate rotation axis is rejected") {
        CHECK_THROWS_AS(ad_rotate({Su2<Real>(), 1}, Su2<Real>(1, 0, 0)), DomainError);
    }
}
