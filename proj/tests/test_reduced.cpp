#include <cmath>

#include <doctest.h>

#include "kwlab/error.hpp"
#include "kwlab/he.hpp"
#include "kwlab/reduced.hpp"

using namespace kwlab;

namespace {

double dd(Real x) { return static_cast<double>(x); }

const ReducedSystem& sys() {
    static const ReducedSystem s = derive_reduced_system(kGoldenConventions);
    return s;
}

}  // namespace

TEST_SUITE("reduced") {
    TEST_CASE("derived system is a' = 2ab - 2b, b' = a^2 - b^2 - 2a") {
        // Oracle: the same right-hand side written out by hand.
        for (Real a : {-1.0L, 0.3L, 2.0L})
            for (Real b : {-0.5L, 0.0L, 1.7L}) {
                const auto r = sys().rhs(a, b);
                CHECK(dd(r[0]) == doctest::Approx(dd(2 * a * b - 2 * b)).epsilon(1e-12));
                CHECK(dd(r[1]) == doctest::Approx(dd(a * a - b * b - 2 * a)).epsilon(1e-12));
            }
        CHECK(dd(sys().closure_residual) < 1e-10);
    }

    TEST_CASE("the opposite orientation gives a system the closed form does not solve") {
        const ReducedSystem other = derive_reduced_system({1, -1, -1});
        const auto r = system_residual(other, he_a_profile(), he_b_profile(), 1);
        CHECK(std::fabs(dd(r[0])) + std::fabs(dd(r[1])) > 1e-3);
    }

    TEST_CASE("Jacobian at the origin has eigenvalues -2 and 2") {
        const auto ev = jacobian_eigenvalues(sys(), 0, 0);
        CHECK(dd(ev[0]) == doctest::Approx(-2).epsilon(1e-12));
        CHECK(dd(ev[1]) == doctest::Approx(2).epsilon(1e-12));
    }

    TEST_CASE("series coefficients match the Taylor expansion of the closed form") {
        // Oracle (computer algebra on 3/(cosh 2y + 2) and coth(y) times it):
        //   a = 1 - 2/3 y^2 + 2/9 y^4 - 4/135 y^6,  b = 1/y - y/3 - y^3/45 + 58/945 y^5.
        const IndicialExpansion e = indicial_expand(sys(), 6, -Real(2) / 3);
        const double a_want[] = {1, 0, -2.0 / 3, 0, 2.0 / 9, 0, -4.0 / 135};
        for (int k = 0; k <= 6; ++k) CHECK(dd(e.a[k]) == doctest::Approx(a_want[k]).epsilon(1e-12));
        const double b_want[] = {1, 0, -1.0 / 3, 0, -1.0 / 45, 0, 58.0 / 945};
        for (int k = -1; k <= 5; ++k) CHECK(dd(e.b_coeff(k)) == doctest::Approx(b_want[k + 1]).epsilon(1e-12));
        CHECK(e.free_orders == std::vector<int>{2});
    }

    TEST_CASE("a(0) other than 1 needs a log term") {
        CHECK_THROWS_WITH_AS(indicial_expand(sys(), 4, 0, 0.5L), doctest::Contains("log term"), NumericalError);
    }

    TEST_CASE("IVP from closed-form data and blow-up detection") {
        const Profile p = integrate_ivp(sys(), 0.2L, {he_a(0.2L), he_b(0.2L)}, 4, {}, uniform_grid(0.2L, 4, 0.1L));
        REQUIRE(p.y.size() == 39);
        for (std::size_t i = 0; i < p.y.size(); ++i) CHECK(dd(p.b[i]) == doctest::Approx(dd(he_b(p.y[i]))).epsilon(1e-9));
        CHECK_THROWS_AS(integrate_ivp(sys(), 1, {0, 5}, 10), BlowUpError);
    }

    TEST_CASE("shooting recovers the decaying solution") {
        ShootOptions o;
        o.y_report = 5;
        const ShootResult r = shoot_for_decay(sys(), o);
        CHECK(dd(r.parameter) == doctest::Approx(-2.0 / 3).epsilon(1e-6));
        for (std::size_t i = 0; i < r.profile.y.size(); i += 50)
            CHECK(std::fabs(dd(r.profile.a[i] - he_a(r.profile.y[i]))) < 1e-6);
        o.param_lo = 0;
        o.param_hi = 0.5L;
        CHECK_THROWS_WITH_AS(shoot_for_decay(sys(), o), doctest::Contains("not bracketed"), NumericalError);
        o.y0 = 0.5L;
        CHECK_THROWS_AS(shoot_for_decay(sys(), o), DomainError);
    }
}
