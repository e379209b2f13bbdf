#include <cmath>
#include <sstream>

#include <doctest.h>

#include "kwlab/error.hpp"
#include "kwlab/halfspace.hpp"

using namespace kwlab;

namespace {

Real dist(const Su2<Real>& a, const Su2<Real>& b) { return norm(a - b); }

/// Central differences of the values, the oracle for the forward-mode partials.
void check_partials(const FlatModelField& f, const HalfspacePoint& p) {
    const Real h = 1e-6L;
    const FlatValues v = f(p);
    for (int mu = 0; mu < kGenerators; ++mu) {
        HalfspacePoint lo = p, hi = p;
        Real* l[] = {&lo.x1, &lo.x2, &lo.x3, &lo.y};
        Real* u[] = {&hi.x1, &hi.x2, &hi.x3, &hi.y};
        *l[mu] -= h;
        *u[mu] += h;
        const FlatValues vl = f(lo), vh = f(hi);
        for (int k = 0; k < 3; ++k) {
            CHECK(static_cast<double>(dist(v.da[mu][k], (Real(1) / (2 * h)) * (vh.a[k] - vl.a[k]))) < 1e-7);
            CHECK(static_cast<double>(dist(v.dphi[mu][k], (Real(1) / (2 * h)) * (vh.phi[k] - vl.phi[k]))) < 1e-7);
        }
    }
}

}  // namespace

TEST_SUITE("halfspace") {
    TEST_CASE("Nahm pole values") {
        const FlatValues v = nahm_pole_eval({1, 2, 3, 0.25L});
        for (int i = 0; i < 3; ++i) {
            CHECK(static_cast<double>(dist(v.phi[i], Real(4) * Su2<Real>::basis(i))) < 1e-18);
            CHECK(v.a[i].is_zero());
        }
        CHECK_THROWS_AS(nahm_pole_eval({0, 0, 0, 0}), DomainError);
    }

    TEST_CASE("singular model at (1,0,0,1) from the closed form") {
        // R = sqrt2: f1 = t1/sqrt2, f2 = t2/sqrt2, f3 = (1 + 1/2) t3; A = -x1 dx2 t3 / 2.
        const FlatValues v = nahm_singular_eval({1, 0, 0, 1});
        const Real s = 1 / std::sqrt(Real(2));
        CHECK(static_cast<double>(dist(v.phi[0], s * Su2<Real>(1, 0, 0))) < 1e-15);
        CHECK(static_cast<double>(dist(v.phi[1], s * Su2<Real>(0, 1, 0))) < 1e-15);
        CHECK(static_cast<double>(dist(v.phi[2], Su2<Real>(0, 0, 1.5L))) < 1e-15);
        CHECK(static_cast<double>(dist(v.a[1], Su2<Real>(0, 0, -0.5L))) < 1e-15);
        CHECK(v.a[0].is_zero());
    }

    TEST_CASE("forward-mode partials agree with central differences") {
        for (const auto& p : sample_points(9, 5, 3, 0.3L, 3, 0.3L)) {
            check_partials(nahm_pole_model(), p);
            check_partials(nahm_singular_model(), p);
            check_partials(perturbed_nahm_pole_model(), p);
        }
    }

    TEST_CASE("model residuals") {
        const auto pts = sample_points(42, 200, 5, 0.1L, 5, 0.1L);
        Real pole = 0, sing = 0, printed = 0, pert = 0;
        for (const auto& p : pts) {
            pole = std::max(pole, kw_residual_flat(nahm_pole_model(), p));
            sing = std::max(sing, kw_residual_flat(nahm_singular_model(), p));
            printed = std::max(printed, kw_residual_flat(nahm_singular_printed_model(), p));
            pert = std::max(pert, kw_residual_flat(perturbed_nahm_pole_model(), p));
        }
        CHECK(static_cast<double>(pole) < 1e-12);
        CHECK(static_cast<double>(sing) < 1e-10);
        CHECK(static_cast<double>(printed) > 1e-3);
        CHECK(static_cast<double>(pert) > 1e-3);
    }

    TEST_CASE("scale pullback leaves the flat models unchanged") {
        const HalfspacePoint p{0.3L, -1.2L, 0.8L, 0.6L};
        for (Real s : {0.25L, 4.0L}) {
            const FlatValues a = scale_pullback(nahm_singular_model(), s)(p), b = nahm_singular_model()(p);
            for (int k = 0; k < 3; ++k) {
                CHECK(static_cast<double>(dist(a.phi[k], b.phi[k])) < 1e-14);
                CHECK(static_cast<double>(dist(a.a[k], b.a[k])) < 1e-14);
            }
        }
    }

    TEST_CASE("sample points are seeded and respect the bounds") {
        const auto a = sample_points(7, 100, 5, 0.1L, 5, 0.1L), b = sample_points(7, 100, 5, 0.1L, 5, 0.1L);
        REQUIRE(a.size() == 100);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].x1 == b[i].x1);
            CHECK(a[i].y >= 0.1L);
            CHECK(a[i].y <= 5);
            CHECK(a[i].r() >= 0.1L);
            CHECK(std::fabs(a[i].x3) <= 5);
        }
    }

    TEST_CASE("point CSV round trip") {
        std::istringstream in("x1,x2,x3,y\n1,2,3,0.5\n-1,0,0.25,2\n");
        const auto pts = read_points_csv(in);
        REQUIRE(pts.size() == 2);
        CHECK(pts[1].x3 == 0.25L);
        std::ostringstream out;
        write_residual_csv(out, nahm_pole_model(), pts);
        CHECK(out.str().rfind("x1,x2,x3,y,res_eq1,res_eq2\n", 0) == 0);
        std::istringstream bad("x1,x2,x3,y\n1,2,zz,0.5\n");
        CHECK_THROWS(read_points_csv(bad));
    }
}
