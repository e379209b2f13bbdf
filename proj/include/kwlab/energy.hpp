#pragma once

// Energy bookkeeping for invariant fields on S^3 x R+: pointwise densities
// from the forms engine, boundary integrals on the slice y = eps, the
// identity chain with its 1/eps cancellation, C_H, the charge, and the
// inequality chain bounding the cross term of a perturbation.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kwlab/invariant.hpp"
#include "kwlab/quadrature.hpp"
#include "kwlab/random.hpp"
#include "kwlab/report.hpp"
#include "kwlab/tolerances.hpp"

namespace kwlab {

/// Pointwise densities per unit volume of S^3 (all constant on S^3).
struct Densities {
    Real f_sq = 0;              // |F_A|^2
    Real nabla_bar_sq = 0;      // |nabla-bar_A phi|^2, S^3 directions only
    Real nabla_sq = 0;          // |nabla_A phi|^2 = nabla-bar part + |d_y phi|^2
    Real completed_sq = 0;      // |*3 d_y phi + phi^2|^2
    Real phi_sq = 0;            // |phi|^2
    Real ricci = 0;             // Ric(phi, phi)
    Real phi2_sq = 0;           // |phi ^ phi|^2
    Real f_minus_phi2_sq = 0;   // |F_A - phi ^ phi|^2
    Real d_phi_sq = 0;          // |d_A phi|^2
    Real d_star_phi_sq = 0;     // |d_A * phi|^2
    Real ch_second_sq = 0;      // |dy ^ d_y phi + *(phi ^ phi)|^2
    Real ch_printed_sq = 0;     // |dy ^ d_y phi - *(phi ^ phi)|^2
    Real charge = 0;            // tr(F ^ F) / vol
};

Densities densities(const GeometryConventions& conv, const FieldJet& jet);
Densities densities(const GeometryConventions& conv, const InvariantField& field, Real y);

/// Slice integrals at y = eps with the orientation induced as boundary of {y > eps}.
struct BoundaryTerms {
    Real cubic = 0;  // (2/3) int phi^3
    Real phi_f = 0;  // -2 int phi ^ F_A
};

BoundaryTerms boundary_terms(const GeometryConventions& conv, const InvariantField& field, Real eps);

/// Throws DomainError when the residual exceeds `tolerance` on a log grid.
void require_solution(const GeometryConventions& conv, const InvariantField& field, Real lo, Real hi,
                      Real tolerance = 1e-8L);

/// vol(S^3) times the integral of one density over (lower, infinity).
Integral energy_integral(const GeometryConventions& conv, const InvariantField& field, Real Densities::*member,
                         const QuadratureSpec& quad, Real lower);

/// C_H = ||F_A|| + ||dy ^ d_y phi + *(phi^phi)|| over all of S^3 x R+.
struct ChValue {
    Integral f_sq;
    Integral second_sq;
    Real value = 0;
    Real error = 0;
};
ChValue compute_C_H(const GeometryConventions& conv, const InvariantField& field, const QuadratureSpec& quad);

/// Topological charge (1/4 pi^2) int tr(F ^ F) by quadrature, and the oracle
/// built from the trace constant of omega and the antiderivative a^3/3 - a^2.
struct Charge {
    Integral quadrature;
    Real trace_constant = 0;  // tr(dy ^ omega ^ omega ^ omega) relative to the volume form
    Real oracle = 0;
};
Charge topological_charge(const GeometryConventions& conv, const InvariantField& field, Real a_start, Real a_end,
                          const QuadratureSpec& quad);

/// Per-eps data of the divergent combination: q = phi_f - int_{y>eps} 2|phi|^2.
struct EpsSample {
    Real eps = 0;
    BoundaryTerms boundary;
    Integral volume;  // int_{y>eps} 2|phi|^2
    Real combined = 0;
};
EpsSample eps_sample(const GeometryConventions& conv, const InvariantField& field, Real eps, const QuadratureSpec& quad);

/// C_0 by the second route: int over all of S^3 x R+ of |F|^2 + |nabla-bar phi|^2 + |*3 d_y phi + phi^2|^2.
Integral c0_direct(const GeometryConventions& conv, const InvariantField& field, const QuadratureSpec& quad);

/// C_0 from the eps-sequence by polynomial extrapolation to eps = 0.
Real extrapolate_to_zero(const std::vector<Real>& eps, const std::vector<Real>& values);

enum class Identity {
    BoundaryExpansion,  // |F-phi^2|^2 + |d_A phi|^2 + |d_A*phi|^2 against the two slice terms
    CompletedSquare,    // |nabla phi|^2 + |phi^2|^2 - cubic slice term = |nabla-bar phi|^2 + |*3 d_y phi + phi^2|^2
    BulkBoundary,       // four bulk terms against -2 int phi ^ F at the slice
    C0Limit,            // eps-sequence of the divergent combination
    C0Routes,           // eps-limit against the direct integral
    RefinedBound,       // |F|^2 + |nabla-bar phi|^2 + (1/2)|*3 d_y phi + phi^2|^2 <= C
};

std::string to_string(Identity id);
Identity parse_identity(const std::string& s);

struct IdentityOptions {
    Real eps = 0.05L;
    std::vector<Real> eps_sequence = {1e-2L, 1e-3L, 1e-4L};
};

CheckReport check_energy_identity(Identity id, const GeometryConventions& conv, const InvariantField& field,
                                  const IdentityOptions& opt, const QuadratureSpec& quad, const Tolerances& tol = {});

/// Rows eps, lhs, rhs, gap for the bulk-boundary identity or the eps-sequence.
struct SweepRow {
    Real eps, lhs, rhs, gap;
};
std::vector<SweepRow> identity_sweep(Identity id, const GeometryConventions& conv, const InvariantField& field,
                                     const std::vector<Real>& eps_values, const QuadratureSpec& quad);

// ---------------------------------------------------------------------------
// Integrating factor and perturbations

/// f(y) = exp(-2 int_y^inf h + int_0^y alpha).
Real integrating_factor(const std::function<Real(Real)>& h, const std::function<Real(Real)>& alpha, Real y,
                        const QuadratureSpec& quad);

/// rho = q(y) m with q = amplitude y^power e^{-kappa y}(1 + beta y).
struct SyntheticPerturbation {
    Real amplitude = 1;
    Real kappa = 3;
    Real beta = 0;
    int power = 1;
    InvariantOneForm<Real> m;

    void validate() const;
    Jet2<Real> q(Real y) const;
    static SyntheticPerturbation random(Rng& rng);
};

/// Constants of the cross-term bound, computed from the decaying solution.
struct CrossTermConstants {
    Real c_2 = 0;      // sup_{y >= 1} |phi^H| e^{2y}
    Real kappa_2 = 0;  // pi^2 e^{-4} C_2^2
    Real c_h = 0;      // |omega| sqrt(vol) C_H
    Real c_3 = 0;      // (1/2)|omega|^2 vol
    Real c_1 = 0;
    Real ch = 0;
};
CrossTermConstants cross_term_constants(const GeometryConventions& conv, const QuadratureSpec& quad);

struct ChainStep {
    std::string id;
    std::string ref;
    Real lhs = 0;
    Real rhs = 0;
    Real slack() const { return rhs - lhs; }
};

struct ChainResult {
    std::vector<ChainStep> steps;
    Real pointwise_min_slack = 0;  // pointwise V1 bound on a y-grid
    Real v1_split_error = 0;       // |X - (Z^(1) - Y_H)| maximum
};

ChainResult perturbation_chain(const SyntheticPerturbation& pert, const CrossTermConstants& k,
                               const GeometryConventions& conv, const QuadratureSpec& quad);

std::vector<CheckReport> cross_term_suite(std::uint64_t seed, int n, const GeometryConventions& conv,
                                      const QuadratureSpec& quad, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Reports

struct EnergyEntry {
    std::string name;
    Real value = 0;
    Real error_estimate = 0;
    std::string statement;
};

struct EnergyReport {
    std::string model;
    std::vector<EnergyEntry> entries;
    std::vector<CheckReport> checks;

    const EnergyEntry& entry(const std::string& name) const;
    nlohmann::ordered_json to_json() const;
};

/// Energy accounting of a field: the positive terms, C_0 by both routes,
/// C_H, the cross-term constants, C = C_0 + 2 C_1 and the curvature bound.
EnergyReport energy_report(const GeometryConventions& conv, const InvariantField& field, const QuadratureSpec& quad,
                             const IdentityOptions& opt, const Tolerances& tol = {}, bool require_kw = true);

/// Unit round S^3 constant |omega|.
Real omega_norm();

}  // namespace kwlab
