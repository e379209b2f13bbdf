#include <cmath>

#include <doctest.h>

#include "kwlab/he.hpp"
#include "kwlab/invariant.hpp"
#include "kwlab/random.hpp"

using namespace kwlab;

namespace {

const GeometryConventions g = kGoldenConventions;

Mat3<Real> random_mat(Rng& rng) {
    Mat3<Real> m{};
    for (auto& row : m)
        for (auto& x : row) x = rng.uniform(-1, 1);
    return m;
}

MatrixProfile wiggly(std::uint64_t seed) {
    Rng rng(seed);
    const Mat3<Real> m1 = random_mat(rng), m2 = random_mat(rng);
    const ScalarProfile s = [](Real y) { return jet2<Real>([](const auto& t) { using std::sin; return sin(2 * t); }, y); };
    const ScalarProfile e = [](Real y) { return jet2<Real>([](const auto& t) { using std::exp; return exp(-t); }, y); };
    return sum(scaled_matrix(s, m1), scaled_matrix(e, m2));
}

}  // namespace

TEST_SUITE("invariant") {
    TEST_CASE("exact invariant identities in rational arithmetic") {
        using F = InvariantOneForm<Rational>;
        const F omega = F::omega();
        // d omega = -2 omega ^ omega
        const auto d = coframe_d(g, omega);
        auto w = wedge(omega);
        CHECK(d.tangential_dual == Rational(-2) * w.tangential_dual);
        CHECK(d.normal == F{});
        // *3(omega ^ omega) = omega
        CHECK(star3(g, w) == omega);
    }

    TEST_CASE("Levi-Civita connection is metric and Ric = 2g") {
        const LeviCivita lc = LeviCivita::from(g.frame<Real>());
        for (int m = 0; m < kGenerators; ++m)
            for (int n = 0; n < kGenerators; ++n)
                for (int l = 0; l < kGenerators; ++l) CHECK(lc.gamma[m][n][l] == -lc.gamma[m][l][n]);
        const auto ric = lc.ricci();
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) CHECK(static_cast<double>(ric[a][b]) == doctest::Approx(a == b ? 2.0 : 0.0));
        CHECK(ricci_check(g).passed());
        CHECK_FALSE(ricci_check({2, 1, 1}).passed());
    }

    TEST_CASE("normal part of F is the y-derivative of A (central-difference oracle)") {
        const MatrixProfile a = wiggly(11);
        const Real h = 1e-5L;
        for (Real y : {0.4L, 1.3L}) {
            const InvariantTwoForm<Real> f = curvature(g, a, y);
            const MatJet lo = a(y - h), hi = a(y + h);
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k)
                    CHECK(static_cast<double>(f.normal.c[i][k]) ==
                          doctest::Approx(static_cast<double>((hi.value[i][k] - lo.value[i][k]) / (2 * h))).epsilon(1e-8));
        }
    }

    TEST_CASE("scalar profile curvature a' dy^omega + (a^2 - 2a) omega^omega") {
        for (Real y : {0.01L, 0.5L, 3.0L}) {
            const InvariantTwoForm<Real> f = curvature(g, omega_multiple(he_a_profile()), y);
            const Real a = he_a(y);
            const Jet2<Real> j = he_a_profile()(y);
            CHECK(static_cast<double>(f.normal.c[1][1]) == doctest::Approx(static_cast<double>(j.d1)));
            CHECK(static_cast<double>(f.tangential_dual.c[2][2]) == doctest::Approx(static_cast<double>(a * a - 2 * a)));
            CHECK(static_cast<double>(f.normal.c[0][1]) == 0);
            CHECK(static_cast<double>(j.d1) == doctest::Approx(static_cast<double>(he_curvature_dy_coefficient(y))));
        }
    }

    TEST_CASE("closed-form solutions have vanishing residual") {
        for (Real y : log_grid(1e-3L, 30, 60)) {
            CHECK(static_cast<double>(kw_residual(g, he_field(), y).norm()) < 1e-10);
            CHECK(static_cast<double>(kw_residual(g, he_alt_field(), y).norm()) < 1e-10);
        }
        CHECK_THROWS_AS(kw_residual(g, he_field(), 0), DomainError);
    }

    TEST_CASE("perturbing b away from the closed form leaves a residual") {
        const ScalarProfile b = [](Real y) {
            Jet2<Real> j = he_b_profile()(y);
            j.value *= 1.01L;
            j.d1 *= 1.01L;
            j.d2 *= 1.01L;
            return j;
        };
        const InvariantField f = scalar_field("scaled", he_a_profile(), b);
        CHECK(static_cast<double>(kw_residual(g, f, 1).norm()) > 1e-4);
    }

    TEST_CASE("rotated fields keep their residual norm") {
        const InvariantField f = make_field("w", wiggly(3), wiggly(4));
        const InvariantField r = rotate(f, {Su2<Real>(1, 2, 3), 0.7L});
        CHECK(static_cast<double>(kw_residual(g, r, 0.9L).norm()) ==
              doctest::Approx(static_cast<double>(kw_residual(g, f, 0.9L).norm())).epsilon(1e-12));
    }

    TEST_CASE("calibration is unique and golden") {
        const CalibrationResult c = calibrate();
        CHECK(c.unique());
        CHECK(c.chosen == kGoldenConventions);
        CHECK(c.candidates.size() == 16);
    }

    TEST_CASE("Taubes left side on phi_y = y^2 t3") {
        const Su2Profile p = [](Real y) {
            const Su2<Real> t3(0, 0, 1);
            return Su2Jet{(y * y) * t3, (2 * y) * t3, Real(2) * t3};
        };
        const InvariantField f = make_field("q", {}, {}, p);
        // -<phi_y'', phi_y> = -<2 t3, y^2 t3> = -y^2
        CHECK(static_cast<double>(taubes_lhs(g, f, 1.5L)) == doctest::Approx(-2.25));
    }

    TEST_CASE("log grid endpoints and validation") {
        const auto grid = log_grid(1e-3L, 30, 300);
        CHECK(grid.size() == 300);
        CHECK(grid.front() == 1e-3L);
        CHECK(grid.back() == 30);
        CHECK_THROWS_AS(log_grid(0, 1, 5), DomainError);
    }
}
