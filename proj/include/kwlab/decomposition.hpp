#pragma once

// Splitting of R^3 (x) su(2) = V1 + V2 + V3 (trace, antisymmetric and
// symmetric traceless coefficient matrices) and the exact identity suite.

#include <cstdint>
#include <string>
#include <vector>

#include "kwlab/invariant.hpp"
#include "kwlab/random.hpp"
#include "kwlab/report.hpp"
#include "kwlab/tolerances.hpp"

namespace kwlab {

using RForm = InvariantOneForm<Rational>;

struct NamedForm {
    std::string name;
    RForm form;
};

struct DecompBasis {
    std::vector<NamedForm> v1;  // omega
    std::vector<NamedForm> v2;  // mu_1, mu_2, mu_3
    std::vector<NamedForm> v3;  // nu_1, nu_2, nu_3, nu_12, nu_13

    static const DecompBasis& standard();
    const std::vector<NamedForm>& space(int i) const;
};

RForm mu(int i);  // i in 1..3
RForm nu(int i);  // i in 1..3
RForm nu12();
RForm nu13();
/// t_i e_a with 1-based indices.
RForm te(int i, int a);

/// Orthogonal projection onto V^i, i in {1,2,3}.
template <typename T>
InvariantOneForm<T> project(int i, const InvariantOneForm<T>& v) {
    InvariantOneForm<T> r;
    const T third = (v.c[0][0] + v.c[1][1] + v.c[2][2]) / T(3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const T sym = (v.c[a][b] + v.c[b][a]) / T(2);
            const T anti = (v.c[a][b] - v.c[b][a]) / T(2);
            if (i == 1)
                r.c[a][b] = a == b ? third : T(0);
            else if (i == 2)
                r.c[a][b] = anti;
            else if (i == 3)
                r.c[a][b] = sym - (a == b ? third : T(0));
            else
                throw DomainError("projection index must be 1, 2 or 3");
        }
    return r;
}

/// *3 [omega ^ v].
template <typename T>
InvariantOneForm<T> omega_bracket(const InvariantOneForm<T>& v) {
    return star3(kGoldenConventions, wedge_bracket(InvariantOneForm<T>::omega(), v));
}

std::vector<CheckReport> omega_bracket_eigencheck(const Tolerances& tol = {});
std::vector<CheckReport> star_table_check(const Tolerances& tol = {});

/// Both sides of the bound on the V1 part of v ^ v, in exact arithmetic.
struct SquareBoundSides {
    Rational lhs_sq;  // |(*3(v^v))^(1) - *3 v1^v1|^2
    Rational rhs;     // |v2|^2 + |v3|^2
    Rational v2_sq, v3_sq;
    bool pure = false;  // v lies in one of V1, V2, V3

    /// 6 lhs^2 <= rhs^2, with equality required for pure vectors.
    bool holds() const;
    /// rhs/sqrt(6) - lhs, as a float.
    double slack() const;
};

SquareBoundSides square_bound_sides(const RForm& v);
CheckReport square_bound_check(const RForm& v, const std::string& id = "square_bound");

/// Random forms with small rational coefficients.
RForm random_form(Rng& rng, int space /* 0 = mixed, 1..3 = pure */);

/// Monte-Carlo harness over projections, eigen table, star table and
/// the V1 bound on v ^ v; n samples per family.
std::vector<CheckReport> decomposition_suite(std::uint64_t seed, int n, const Tolerances& tol = {});

std::string to_string(const RForm& v);

}  // namespace kwlab
