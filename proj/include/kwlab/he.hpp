#pragma once

// Closed-form decaying solution on S^3 x R+ with A = a(y) omega and
// phi = b(y) omega, together with the alternate solution a -> 2 - a.
//
//   a = 6 e^{2y} / (e^{4y} + 4 e^{2y} + 1) = 3 / (cosh 2y + 2)
//   b = 6 (e^{2y} + 1) e^{2y} / ((e^{4y} + 4 e^{2y} + 1)(e^{2y} - 1)) = coth(y) a

#include <cmath>

#include "kwlab/dual.hpp"
#include "kwlab/invariant.hpp"

namespace kwlab {

template <typename T>
T he_a(const T& y) {
    using std::exp;
    const T e = exp(T(2) * y);
    // cosh 2y + 2 written through e^{2y} so nested duals work unchanged.
    return T(6) / (e + T(1) / e + T(4));
}

template <typename T>
T he_b(const T& y) {
    using std::exp;
    using std::expm1;
    const T e = exp(T(2) * y);
    const T coth = (e + T(1)) / expm1(T(2) * y);
    return coth * he_a(y);
}

template <typename T>
T he_alt_a(const T& y) {
    return T(2) - he_a(y);
}

/// Printed dy^omega coefficient of the curvature, 12(e^{2y}-e^{6y})/(e^{4y}+4e^{2y}+1)^2.
inline Real he_curvature_dy_coefficient(Real y) {
    const Real e = std::exp(2 * y);
    const Real d = e * e + 4 * e + 1;
    return 12 * (e - e * e * e) / (d * d);
}

/// Printed omega^2 coefficient, 36 e^{4y}/(e^{4y}+4e^{2y}+1)^2 = a^2.
inline Real he_printed_omega2_coefficient(Real y) {
    const Real a = he_a(y);
    return a * a;
}

ScalarProfile he_a_profile();
ScalarProfile he_b_profile();
ScalarProfile he_alt_a_profile();
ScalarProfile constant_profile(Real value);

/// A = a omega, phi = b omega, phi_y = 0.
InvariantField scalar_field(std::string name, ScalarProfile a, ScalarProfile b);
InvariantField he_field();
InvariantField he_alt_field();

}  // namespace kwlab
