#include <algorithm>
#include <vector>

#include <doctest.h>

#include "kwlab/forms.hpp"
#include "kwlab/kw.hpp"
#include "kwlab/random.hpp"

using namespace kwlab;

namespace {

// Oracle: parity of the permutation that sorts the concatenated index lists.
int parity_sign(Blade a, Blade b) {
    std::vector<int> seq;
    for (int g = 0; g < kGenerators; ++g)
        if (a & (1u << g)) seq.push_back(g);
    for (int g = 0; g < kGenerators; ++g)
        if (b & (1u << g)) seq.push_back(g);
    int inversions = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j) inversions += seq[i] > seq[j];
    return inversions % 2 ? -1 : 1;
}

Form<Real> random_form(Rng& rng) {
    Form<Real> f;
    for (auto& c : f.c) c = Su2<Real>(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    return f;
}

/// d of a constant-coefficient scalar form.
ScalarForm<Real> d_constant(const ScalarForm<Real>& w, const Coframe<Real>& frame) {
    ScalarForm<Real> r;
    for (int i = 0; i < kBlades; ++i)
        if (w.c[i] != 0) r += w.c[i] * frame.d_blade(static_cast<Blade>(i));
    return r;
}

}  // namespace

TEST_SUITE("forms") {
    TEST_CASE("wedge signs match permutation parity") {
        for (int a = 0; a < kBlades; ++a)
            for (int b = 0; b < kBlades; ++b) {
                const int s = wedge_sign(static_cast<Blade>(a), static_cast<Blade>(b));
                if (a & b)
                    CHECK(s == 0);
                else
                    CHECK(s == parity_sign(static_cast<Blade>(a), static_cast<Blade>(b)));
            }
    }

    TEST_CASE("double Hodge star is (-1)^k on a Riemannian 4-manifold") {
        Rng rng(5);
        const Form<Real> f = random_form(rng);
        const Form<Real> ss = hodge(hodge(f, HodgeSigns{}), HodgeSigns{});
        for (int b = 0; b < kBlades; ++b) {
            const Real sign = degree(static_cast<Blade>(b)) % 2 ? -1 : 1;
            CHECK(static_cast<double>(norm(ss.c[b] - sign * f.c[b])) < 1e-18);
        }
    }

    TEST_CASE("-tr(a ^ *a) equals |a|^2 times the volume form") {
        Rng rng(6);
        for (int k = 0; k <= 4; ++k) {
            const Form<Real> a = random_form(rng).part(k);
            const ScalarForm<Real> t = trace_wedge(a, hodge(a, HodgeSigns{}));
            // volume form = orientation * dy^e1^e2^e3 = -orientation * (blade order)
            const Real vol_coeff = -Real(hodge_base_orientation());
            CHECK(static_cast<double>(-t[kVolume] / vol_coeff) == doctest::Approx(static_cast<double>(norm_sq(a))));
        }
    }

    TEST_CASE("d^2 = 0 on constant forms of the sphere coframe") {
        for (Real c : {1.0L, -2.0L}) {
            const Coframe<Real> frame = Coframe<Real>::sphere(c);
            for (int i = 0; i < kBlades; ++i) {
                const ScalarForm<Real> dd = d_constant(frame.d_blade(static_cast<Blade>(i)), frame);
                for (Real x : dd.c) CHECK(x == 0);
            }
        }
    }

    TEST_CASE("sphere coframe: de1 = -2c e2 ^ e3") {
        const Coframe<Real> frame = Coframe<Real>::sphere(1);
        CHECK(frame.de[0][blade(1, 2)] == -2);
        CHECK(frame.de[1][blade(0, 2)] == 2);  // -2 e3^e1 = +2 e1^e3
        CHECK(frame.de[2][blade(0, 1)] == -2);
        CHECK(frame.de[kNormal][blade(0, 1)] == 0);
    }

    TEST_CASE("graded bracket: [a ^ a] = 2 a ^ a and odd forms") {
        Rng rng(7);
        const Form<Real> a = random_form(rng).part(1);
        const Form<Real> b = random_form(rng).part(1);
        // For 1-forms [a ^ b] = [b ^ a].
        const Form<Real> d = bracket_wedge(a, b) - bracket_wedge(b, a);
        CHECK(static_cast<double>(norm_sq(d)) < 1e-30);
        const Form<Real> sq = square(a) - Real(0.5) * bracket_wedge(a, a);
        CHECK(static_cast<double>(norm_sq(sq)) == 0);
    }

    TEST_CASE("Bianchi identity d_A F = 0 for a linear connection on the flat frame") {
        // A = sum_mu x_mu M_mu with constant partials: F = dA + A^A, d_A F = dF + [A ^ F].
        Rng rng(8);
        FormJet<Real> a;
        a.value = random_form(rng).part(1);
        for (int mu = 0; mu < kGenerators; ++mu) a.partial[mu] = random_form(rng).part(1);
        const Coframe<Real> flat = Coframe<Real>::flat();
        FormJet<Real> f;
        f.value = curvature_form(a, flat);
        // X_mu F = d(X_mu A) + [X_mu A ^ A] (X_mu of dA vanishes for linear A)
        for (int mu = 0; mu < kGenerators; ++mu) {
            FormJet<Real> pa;
            pa.value = a.partial[mu];
            f.partial[mu] = exterior_d(pa, flat) + bracket_wedge(a.partial[mu], a.value);
        }
        const Form<Real> bianchi = covariant_d(f, a.value, flat);
        CHECK(static_cast<double>(norm_sq(bianchi)) < 1e-28);
    }
}
