#pragma once

// Equivariant reduction A = a(y) omega, phi = b(y) omega of the KW equations
// to a first-order system in (a, b), its series at the Nahm pole, an
// initial-value integrator and a decay-seeking shooting solver.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kwlab/invariant.hpp"

namespace kwlab {

/// Quadratic polynomial c0 + ca a + cb b + caa a^2 + cab ab + cbb b^2.
struct Quadratic {
    Real c0 = 0, ca = 0, cb = 0, caa = 0, cab = 0, cbb = 0;

    Real operator()(Real a, Real b) const { return c0 + ca * a + cb * b + caa * a * a + cab * a * b + cbb * b * b; }
    Real d_a(Real a, Real b) const { return ca + 2 * caa * a + cab * b; }
    Real d_b(Real a, Real b) const { return cb + cab * a + 2 * cbb * b; }
    std::string to_string() const;
};

/// a' = fa(a, b), b' = fb(a, b).
struct ReducedSystem {
    Quadratic fa, fb;
    Real closure_residual = 0;  // worst misfit of the quadratic model on check points

    std::array<Real, 2> rhs(Real a, Real b) const { return {fa(a, b), fb(a, b)}; }
    std::array<std::array<Real, 2>, 2> jacobian(Real a, Real b) const;
    std::string describe() const;
};

/// Reads the system off the residual engine. Throws NumericalError
/// "calibration inconsistent" when the residual leaves span{dy^omega, omega^2}
/// or is not quadratic in (a, b).
ReducedSystem derive_reduced_system(const GeometryConventions& conv);

/// Residual (a' - fa, b' - fb) of the closed-form decaying solution at y.
std::array<Real, 2> system_residual(const ReducedSystem& sys, const ScalarProfile& a, const ScalarProfile& b, Real y);

/// Eigenvalues of the Jacobian at a point (real case only; throws otherwise).
std::array<Real, 2> jacobian_eigenvalues(const ReducedSystem& sys, Real a, Real b);

/// a = sum_{k>=0} a_k y^k, b = sum_{k>=-1} b_k y^k.
struct IndicialExpansion {
    int order = 0;
    std::vector<Real> a;      // a[k] = a_k, k = 0..order
    std::vector<Real> b;      // b[k+1] = b_k, k = -1..order
    std::vector<int> free_orders;  // orders whose a-coefficient is not forced
    Real free_value = 0;

    Real b_coeff(int k) const { return b.at(k + 1); }
    Real a_at(Real y) const;
    Real b_at(Real y) const;
};

/// Matches power series up to `order` (<= 6). The first free coefficient
/// is set to `free_value`. `a0` overrides the forced value a(0); a value that
/// breaks the order-0 balance raises NumericalError naming the order, since
/// it would need a log term.
IndicialExpansion indicial_expand(const ReducedSystem& sys, int order, Real free_value = 0,
                                  std::optional<Real> a0 = std::nullopt);

struct IvpOptions {
    Real abs_tol = 1e-16L;
    Real rel_tol = 1e-16L;
    Real initial_step = 1e-4L;
    Real fixed_step = 0;  // > 0: constant-step integration with this step
    Real blowup = 1e8L;
};

struct Profile {
    std::vector<Real> y, a, b;

    /// Scalar splines for a and b; needs at least 4 samples.
    ScalarProfile a_spline() const;
    ScalarProfile b_spline() const;
};

/// Integrates from (y0, state) to y1. With `grid` the profile is sampled at
/// those abscissae (which must include y0 and y1, monotone); otherwise at the
/// accepted steps. Throws BlowUpError when |state| exceeds the threshold.
Profile integrate_ivp(const ReducedSystem& sys, Real y0, std::array<Real, 2> state, Real y1,
                      const IvpOptions& opt = {}, const std::vector<Real>& grid = {});

/// Uniform grid of step h from lo to hi, both included.
std::vector<Real> uniform_grid(Real lo, Real hi, Real h);

struct ShootOptions {
    Real y0 = 0.1L;
    int order = 6;
    Real param_lo = -1;
    Real param_hi = 0;
    Real y_end = 12;        // horizon of each trial integration
    Real y_report = 8;      // the returned profile covers [y0, y_report]
    Real sample_step = 0.01L;
    int max_iterations = 200;
    IvpOptions ivp;
};

struct ShootTrial {
    Real parameter;
    int side;        // sign of a - b where the trajectory leaves the decaying branch
    Real y_stop;     // end of the trial (blow-up location or horizon)
    bool blew_up;
};

struct ShootResult {
    Real parameter = 0;
    Profile profile;
    IndicialExpansion expansion;
    std::vector<ShootTrial> trace;

    nlohmann::ordered_json log_json() const;
};

/// One trial of the shooting map at the given free coefficient.
ShootTrial shoot_trial(const ReducedSystem& sys, Real parameter, const ShootOptions& opt);

/// Bisection on the free series coefficient for the decaying solution.
/// Throws NumericalError "decay manifold not bracketed" when both ends of the
/// range leave on the same side.
ShootResult shoot_for_decay(const ReducedSystem& sys, const ShootOptions& opt = {});

/// Field on (0, inf) from a shooting result: series below y0, splines on
/// the sampled range, zero beyond it.
InvariantField field_from_shot(const ShootResult& r, std::string name);

/// CSV `y,a,b`.
void write_profile_csv(std::ostream& out, const Profile& p);

}  // namespace kwlab
