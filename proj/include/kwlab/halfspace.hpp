#pragma once

// Closed-form model solutions on the flat half-space R^3 x R+ with
// coordinates (x1, x2, x3, y). Coefficients and their first partials come
// from forward-mode differentiation of the closed forms.

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "kwlab/dual.hpp"
#include "kwlab/forms.hpp"
#include "kwlab/su2.hpp"

namespace kwlab {

struct HalfspacePoint {
    Real x1 = 0, x2 = 0, x3 = 0, y = 1;

    Real r() const;
    HalfspacePoint scaled(Real s) const { return {s * x1, s * x2, s * x3, s * y}; }
};

/// Coefficients of dx1..dx3 for A and phi, with partials d/dx1, d/dx2, d/dx3, d/dy.
struct FlatValues {
    std::array<Su2<Real>, 3> a;
    std::array<Su2<Real>, 3> phi;
    std::array<std::array<Su2<Real>, 3>, kGenerators> da;
    std::array<std::array<Su2<Real>, 3>, kGenerators> dphi;
};

struct FlatModelField {
    std::string name;
    std::function<FlatValues(const HalfspacePoint&)> eval;

    FlatValues operator()(const HalfspacePoint& p) const { return eval(p); }
};

/// Exact point evaluation of the Nahm pole model (A, phi) = (0, sum t_i/y dx_i).
FlatValues nahm_pole_eval(const HalfspacePoint& p);
/// Exact point evaluation of the tau = 1 model singular along the x3-axis:
///   A   = (x2 dx1 - x1 dx2) t3 / (r^2 + y^2)
///   phi = sum f_i / y dx_i,  f1 = (x1 t1 + x2 t2)/R,  f2 = (x1 t2 - x2 t1)/R,
///   f3 = (1 + y^2/R^2) t3,  R = sqrt(r^2 + y^2).
FlatValues nahm_singular_eval(const HalfspacePoint& p);
/// The same model with the opposite rotation sense in A and f1, f2 (the
/// commonly quoted form). It fails d_A * phi = 0 at generic points.
FlatValues nahm_singular_printed_eval(const HalfspacePoint& p);

FlatModelField nahm_pole_model();
FlatModelField nahm_singular_model();
FlatModelField nahm_singular_printed_model();
/// Nahm pole plus y t1 dx1 in phi; not a solution.
FlatModelField perturbed_nahm_pole_model();
FlatModelField zero_flat_model();

/// (s A(s p), s phi(s p)).
FlatModelField scale_pullback(const FlatModelField& field, Real s);

struct FlatResidual {
    Real eq1 = 0;  // |F_A - phi^phi - *d_A phi|
    Real eq2 = 0;  // |d_A * phi|

    Real combined() const;
};

/// Orientation sign of the flat Hodge star relative to dy^dx1^dx2^dx3 that
/// makes the Nahm pole model an exact solution.
int flat_orientation();
HodgeSigns flat_hodge();

FlatResidual kw_residual_flat_parts(const FlatModelField& field, const HalfspacePoint& p);
Real kw_residual_flat(const FlatModelField& field, const HalfspacePoint& p);
/// Residual from explicit values and partials (shared by the finite-difference oracle).
FlatResidual kw_residual_flat_parts(const FlatValues& v);

/// Seeded sample points: x in [-extent, extent]^3, y log-uniform in [y_lo, y_hi],
/// rejecting points with r < min_r.
std::vector<HalfspacePoint> sample_points(std::uint64_t seed, int n, Real extent = 5, Real y_lo = 0.1L,
                                          Real y_hi = 5, Real min_r = 0);

/// CSV `x1,x2,x3,y`.
std::vector<HalfspacePoint> read_points_csv(std::istream& in);
/// CSV `x1,x2,x3,y,res_eq1,res_eq2`.
void write_residual_csv(std::ostream& out, const FlatModelField& field, const std::vector<HalfspacePoint>& pts);

}  // namespace kwlab
