#pragma once

#include <functional>
#include <string>

#include "kwlab/su2.hpp"

namespace kwlab {

enum class TailMode { TruncateBound, ExponentialSubstitution };

std::string to_string(TailMode m);
TailMode parse_tail_mode(const std::string& s);

/// Composite Gauss-Kronrod panels on [lower, y_split] (geometric from a
/// positive lower end, uniform from 0) and uniform on [y_split, y_max],
/// plus the exponential tail beyond y_max.
struct QuadratureSpec {
    Real eps = 1e-3L;
    Real y_split = 1;
    Real y_max = 30;
    int panels = 24;  // per segment
    int nodes_per_panel = 31;
    TailMode tail_mode = TailMode::TruncateBound;
    Real tail_rate = 4;  // assumed envelope exp(-tail_rate y) beyond y_split

    void validate() const;
    /// Twice the panels.
    QuadratureSpec refined() const;
};

struct Integral {
    Real value = 0;
    Real error = 0;  // quadrature estimate plus tail remainder

    Integral& operator+=(const Integral& o) {
        value += o.value;
        error += o.error;
        return *this;
    }
};

using Integrand = std::function<Real(Real)>;

/// Volume of the unit round S^3.
Real sphere_volume();

/// Integral of f over [lower, infinity) (lower may be 0). Throws NumericalError
/// naming y when f is not finite.
Integral integrate_halfline(const Integrand& f, Real lower, const QuadratureSpec& spec);
/// Integral of f over [lo, hi] with spec.panels panels (geometric when lo > 0).
Integral integrate_range(const Integrand& f, Real lo, Real hi, const QuadratureSpec& spec);

/// vol(S^3) * integral of a pointwise density over S^3 x (lower, infinity).
Integral l2_norm_sq(const Integrand& density, const QuadratureSpec& spec, Real lower);
inline Integral l2_norm_sq(const Integrand& density, const QuadratureSpec& spec) {
    return l2_norm_sq(density, spec, spec.eps);
}

/// Sup of f(y) e^{rate y} over a uniform grid of n points in [lo, hi].
Real envelope_constant(const Integrand& f, Real rate, Real lo, Real hi, int n);

}  // namespace kwlab
