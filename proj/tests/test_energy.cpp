#include <cmath>

#include <boost/math/constants/constants.hpp>
#include <doctest.h>

#include "kwlab/energy.hpp"
#include "kwlab/he.hpp"
#include "kwlab/spline.hpp"

using namespace kwlab;

namespace {

const GeometryConventions g = kGoldenConventions;
const Real pi = boost::math::constants::pi<Real>();
const Real two_pi2 = 2 * pi * pi;  // vol(S^3)

double dd(Real x) { return static_cast<double>(x); }

// Scalar oracles for A = a omega, phi = b omega with |omega|^2 = 3/2, derived by hand:
// F = a' dy^omega + (a^2 - 2a) omega^omega, nabla-bar phi = b(a - 1)[omega, .]-type terms.
struct Scalars {
    Real a, da, b, db;
    explicit Scalars(Real y) {
        const Jet2<Real> ja = he_a_profile()(y), jb = he_b_profile()(y);
        a = ja.value, da = ja.d1, b = jb.value, db = jb.d1;
    }
    Real g2() const { return a * a - 2 * a; }
};

}  // namespace

TEST_SUITE("energy") {
    TEST_CASE("densities of the decaying solution against scalar formulas") {
        for (Real y : {0.05L, 0.4L, 1.0L, 3.0L}) {
            const Densities d = densities(g, he_field(), y);
            const Scalars s(y);
            CHECK(dd(d.f_sq) == doctest::Approx(dd(1.5L * (s.da * s.da + s.g2() * s.g2()))).epsilon(1e-12));
            CHECK(dd(d.nabla_bar_sq) == doctest::Approx(dd(3 * s.b * s.b * (s.a - 1) * (s.a - 1))).epsilon(1e-12));
            CHECK(dd(d.completed_sq) == doctest::Approx(dd(1.5L * (s.db + s.b * s.b) * (s.db + s.b * s.b))).epsilon(1e-9));
            CHECK(dd(d.phi_sq) == doctest::Approx(dd(1.5L * s.b * s.b)).epsilon(1e-14));
            CHECK(dd(d.ricci) == doctest::Approx(dd(2 * d.phi_sq)).epsilon(1e-14));
            CHECK(dd(d.ch_second_sq) == doctest::Approx(dd(1.5L * s.g2() * s.g2())).epsilon(1e-9));
            CHECK(dd(d.ch_printed_sq) == doctest::Approx(dd(1.5L * (s.db - s.b * s.b) * (s.db - s.b * s.b))).epsilon(1e-9));
            // On a solution the first equation holds pointwise.
            CHECK(dd(d.f_minus_phi2_sq) == doctest::Approx(dd(d.d_phi_sq)).epsilon(1e-9));
            CHECK(dd(d.d_star_phi_sq) < 1e-20);
        }
    }

    TEST_CASE("slice terms against scalar formulas") {
        for (Real eps : {0.05L, 0.5L}) {
            const BoundaryTerms t = boundary_terms(g, he_field(), eps);
            const Scalars s(eps);
            CHECK(dd(t.phi_f) == doctest::Approx(dd(-3 * s.b * s.g2() * two_pi2)).epsilon(1e-12));
            CHECK(dd(t.cubic) == doctest::Approx(dd(s.b * s.b * s.b * two_pi2)).epsilon(1e-12));
        }
    }

    TEST_CASE("quadrature of closed-form integrals") {
        QuadratureSpec q;
        CHECK(dd(integrate_halfline([](Real y) { return std::exp(-2 * y); }, 0, q).value) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(dd(integrate_range([](Real y) { return 1 / y; }, 1e-3L, 1, q).value) ==
              doctest::Approx(std::log(1000.0)).epsilon(1e-13));
        CHECK(dd(sphere_volume()) == doctest::Approx(dd(two_pi2)));
        CHECK_THROWS_AS(integrate_range([](Real) { return std::nanl(""); }, 0, 1, q), NumericalError);
    }

    TEST_CASE("Neville extrapolation is exact on quadratics") {
        const std::vector<Real> eps = {1e-1L, 1e-2L, 1e-3L};
        std::vector<Real> v;
        for (Real e : eps) v.push_back(7 + 3 * e - 11 * e * e);
        CHECK(dd(extrapolate_to_zero(eps, v)) == doctest::Approx(7).epsilon(1e-14));
    }

    TEST_CASE("C_0 by the two routes and the curvature bound") {
        QuadratureSpec q;
        const Integral direct = c0_direct(g, he_field(), q);
        const IdentityOptions opt;
        std::vector<Real> vals;
        for (Real e : opt.eps_sequence) vals.push_back(eps_sample(g, he_field(), e, q).combined);
        CHECK(dd(extrapolate_to_zero(opt.eps_sequence, vals)) == doctest::Approx(dd(direct.value)).epsilon(1e-8));
        const Real ym = energy_integral(g, he_field(), &Densities::f_sq, q, 0).value;
        CHECK(ym < direct.value);
    }

    TEST_CASE("charge: oracle from a^3/3 - a^2 and opposite signs") {
        QuadratureSpec q;
        const Charge he = topological_charge(g, he_field(), 1, 0, q);
        const Charge alt = topological_charge(g, he_alt_field(), 1, 2, q);
        CHECK(dd(he.quadrature.value) == doctest::Approx(dd(he.oracle)).epsilon(1e-10));
        CHECK(dd(alt.quadrature.value) == doctest::Approx(dd(alt.oracle)).epsilon(1e-10));
        CHECK(dd(he.oracle) == doctest::Approx(-dd(alt.oracle)));
        CHECK(std::round(dd(he.oracle)) == dd(he.oracle));
    }

    TEST_CASE("C_H uses the corrected sign and is finite") {
        QuadratureSpec q;
        const ChValue c = compute_C_H(g, he_field(), q);
        const Real f = energy_integral(g, he_field(), &Densities::f_sq, q, 0).value;
        CHECK(dd(c.f_sq.value) == doctest::Approx(dd(f)));
        CHECK(std::isfinite(dd(c.value)));
        CHECK(dd(c.value) == doctest::Approx(dd(std::sqrt(c.f_sq.value) + std::sqrt(c.second_sq.value))));
    }

    TEST_CASE("identity checks refuse non-solutions") {
        const InvariantField bad = scalar_field("bad", constant_profile(0.5L), constant_profile(1));
        CHECK_THROWS_AS(require_solution(g, bad, 0.1L, 5), DomainError);
        CHECK_THROWS_AS(check_energy_identity(Identity::BulkBoundary, g, bad, {}, {}), DomainError);
    }

    TEST_CASE("integrating factor with constant h and alpha") {
        // h = c e^{-2y}: int_y^inf h = c e^{-2y}/2; alpha = e^{-y}: int_0^y alpha = 1 - e^{-y}.
        QuadratureSpec q;
        const Real c = 0.7L;
        auto h = [c](Real y) { return c * std::exp(-2 * y); };
        auto alpha = [](Real y) { return std::exp(-y); };
        for (Real y : {0.2L, 1.5L}) {
            const Real oracle = std::exp(-c * std::exp(-2 * y) + 1 - std::exp(-y));
            CHECK(dd(integrating_factor(h, alpha, y, q)) == doctest::Approx(dd(oracle)).epsilon(1e-12));
        }
    }

    TEST_CASE("synthetic perturbations must vanish at y = 0") {
        SyntheticPerturbation p;
        p.power = 0;
        CHECK_THROWS_AS(p.validate(), DomainError);
        p.power = 1;
        CHECK_NOTHROW(p.validate());
    }

    TEST_CASE("spline reproduces a cubic exactly") {
        std::vector<Real> x, y;
        for (int i = 0; i < 8; ++i) {
            x.push_back(0.3L * i + 0.1L * (i % 2));
            y.push_back(x.back() * x.back() * x.back() - 2 * x.back());
        }
        const CubicSpline s(x, y);
        for (Real t : {0.05L, 0.77L, 1.9L}) {
            const Jet2<Real> j = s(t);
            CHECK(dd(j.value) == doctest::Approx(dd(t * t * t - 2 * t)).epsilon(1e-12));
            CHECK(dd(j.d1) == doctest::Approx(dd(3 * t * t - 2)).epsilon(1e-10));
        }
    }
}
