#include <vector>

#include <doctest.h>

#include "kwlab/decomposition.hpp"

using namespace kwlab;

namespace {

// Oracle: projection onto span(basis) from the Gram system, solved exactly.
RForm gram_projection(const std::vector<NamedForm>& basis, const RForm& v) {
    const std::size_t n = basis.size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = inner(basis[i].form, basis[j].form);
        m[i][n] = inner(basis[i].form, v);
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (m[p][c] == 0) ++p;
        std::swap(m[p], m[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            const Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    RForm out;
    for (std::size_t i = 0; i < n; ++i) out += (m[i][n] / m[i][i]) * basis[i].form;
    return out;
}

Su2<Rational> col(const RForm& v, int a) { return v.column(a); }

// Oracle for the left side of the square bound: (*3(v^v))_a = [v_b, v_c] for
// cyclic (a, b, c); its V1 part is the trace third times omega.
Rational square_bound_lhs(const RForm& v) {
    Rational trace = 0;
    for (int a = 0; a < 3; ++a) trace += bracket(col(v, (a + 1) % 3), col(v, (a + 2) % 3))[a];
    const Rational s = (v.c[0][0] + v.c[1][1] + v.c[2][2]) / 3;  // v1 = s omega
    const Rational coeff = trace / 3 - s * s;                     // *3(omega^omega) = omega
    return coeff * coeff * norm_sq(RForm::omega());
}

}  // namespace

TEST_SUITE("decomposition") {
    TEST_CASE("projections agree with the Gram oracle") {
        const DecompBasis& b = DecompBasis::standard();
        for (int k = 0; k < 200; ++k) {
            Rng rng = Rng::stream(17, k);
            const RForm v = random_form(rng, 0);
            for (int i = 1; i <= 3; ++i) CHECK(project(i, v) == gram_projection(b.space(i), v));
            CHECK(project(1, v) + project(2, v) + project(3, v) == v);
        }
    }

    TEST_CASE("basis spans nine dimensions and spaces are orthogonal") {
        const DecompBasis& b = DecompBasis::standard();
        CHECK(b.v1.size() + b.v2.size() + b.v3.size() == 9);
        for (int i = 1; i <= 3; ++i)
            for (int j = i + 1; j <= 3; ++j)
                for (const auto& x : b.space(i))
                    for (const auto& y : b.space(j)) CHECK(inner(x.form, y.form) == 0);
    }

    TEST_CASE("omega bracket eigenvalues 2, 1, -1") {
        const DecompBasis& b = DecompBasis::standard();
        const Rational eig[] = {2, 1, -1};
        for (int i = 1; i <= 3; ++i)
            for (const auto& x : b.space(i)) CHECK(omega_bracket(x.form) == eig[i - 1] * x.form);
    }

    TEST_CASE("square bound left side agrees with the cross-product oracle") {
        for (int k = 0; k < 300; ++k) {
            Rng rng = Rng::stream(23, k);
            const RForm v = random_form(rng, k % 4);
            const SquareBoundSides s = square_bound_sides(v);
            CHECK(s.lhs_sq == square_bound_lhs(v));
            CHECK(s.holds());
        }
    }

    TEST_CASE("square bound is an equality on pure vectors") {
        for (const RForm& v : {mu(1), nu(3), nu12(), RForm::omega(), Rational(3) * mu(2) - mu(3)}) {
            const SquareBoundSides s = square_bound_sides(v);
            CHECK(s.pure);
            CHECK(6 * s.lhs_sq == s.rhs * s.rhs);
        }
    }

    TEST_CASE("exact suite passes at a small sample count") {
        const auto reports = decomposition_suite(42, 100);
        for (const auto& r : reports) CHECK_MESSAGE(r.passed(), r.check_id);
    }
}
