#include "kwlab/energy.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/constants/constants.hpp>

#include "kwlab/decomposition.hpp"
#include "kwlab/error.hpp"
#include "kwlab/he.hpp"
#include "kwlab/kw.hpp"

namespace kwlab {

namespace {

constexpr Real kPi = boost::math::constants::pi<Real>();

double d(Real x) { return static_cast<double>(x); }

Form<Real> tangential_one_form(const Mat3<Real>& m) { return to_one_form(m).to_form(); }

/// dy ^ u for a tangential 1-form u.
Form<Real> dy_wedge(const Form<Real>& u) {
    Form<Real> r;
    for (int a = 0; a < 3; ++a) {
        const Blade b = static_cast<Blade>(blade(a) | kNormalBit);
        r[b] = Real(wedge_sign(blade(kNormal), blade(a))) * u[blade(a)];
    }
    return r;
}

/// Coefficient of a top form relative to the oriented volume form.
Real per_volume(const ScalarForm<Real>& top) {
    // volume = orientation * dy^e1^e2^e3 = -orientation * (e1^e2^e3^dy in blade order)
    return -top[kVolume] / Real(hodge_base_orientation());
}

/// Integral over the slice {eps} x S^3, oriented as the boundary of {y > eps}.
Real slice_integral(const ScalarForm<Real>& three_form) {
    // outward normal -d/dy: i_{-d_y}(orientation dy^e123) = -orientation e123
    return -Real(hodge_base_orientation()) * three_form[kTangentialVolume] * sphere_volume();
}

Real rel_gap(Real lhs, Real rhs) { return std::fabs(lhs - rhs) / std::max<Real>(std::fabs(rhs), 1e-300L); }

}  // namespace

Real omega_norm() { return std::sqrt(Real(3) / 2); }

Densities densities(const GeometryConventions& conv, const FieldJet& jet) {
    const Coframe<Real> frame = conv.frame<Real>();
    const HodgeSigns hs = conv.hodge();
    const FormJet<Real> aj = connection_jet(jet);
    const FormJet<Real> pj = higgs_jet(jet);
    const Form<Real> f = curvature_form(aj, frame);
    const Form<Real>& phi = pj.value;
    const Form<Real> phi_tan = phi.tangential();
    const Form<Real> phi2 = square(phi);

    Densities out;
    out.f_sq = norm_sq(f);
    out.phi_sq = norm_sq(phi);
    out.phi2_sq = norm_sq(phi2);
    out.f_minus_phi2_sq = norm_sq(f - phi2);
    out.d_phi_sq = norm_sq(covariant_d(pj, aj.value, frame));
    out.d_star_phi_sq = norm_sq(covariant_d(hodge(pj, hs), aj.value, frame));

    const LeviCivita lc = LeviCivita::from(frame);
    Real bar = 0;
    for (int m = 0; m < 3; ++m)
        for (int l = 0; l < kGenerators; ++l) {
            Su2<Real> v = bracket(aj.value[blade(m)], phi[blade(l)]);
            for (int n = 0; n < kGenerators; ++n) v -= lc.gamma[m][l][n] * phi[blade(n)];
            bar += norm_sq(v);
        }
    out.nabla_bar_sq = bar;
    out.nabla_sq = bar + norm_sq(pj.partial[kNormal]);

    InvariantOneForm<Real> comp = to_one_form(jet.phi.d1);
    comp *= Real(conv.s2);
    comp += InvariantTwoForm<Real>::from_form(square(phi_tan)).tangential_dual;
    out.completed_sq = norm_sq(comp);

    const auto ric = lc.ricci();
    for (int a = 0; a < kGenerators; ++a)
        for (int b = 0; b < kGenerators; ++b) out.ricci += ric[a][b] * inner(phi[blade(a)], phi[blade(b)]);

    const Form<Real> dy_dphi = dy_wedge(tangential_one_form(jet.phi.d1));
    const Form<Real> star_sq = hodge(square(phi_tan), hs);
    out.ch_second_sq = norm_sq(dy_dphi + star_sq);
    out.ch_printed_sq = norm_sq(dy_dphi - star_sq);
    out.charge = per_volume(trace_wedge(f, f));
    return out;
}

Densities densities(const GeometryConventions& conv, const InvariantField& field, Real y) {
    if (!(y > 0)) throw DomainError("boundary evaluation");
    return densities(conv, field.at(y));
}

BoundaryTerms boundary_terms(const GeometryConventions& conv, const InvariantField& field, Real eps) {
    if (!(eps > 0)) throw DomainError("boundary evaluation");
    const FieldJet jet = field.at(eps);
    const Form<Real> f = curvature_form(connection_jet(jet), conv.frame<Real>()).tangential();
    const Form<Real> phi = higgs_jet(jet).value.tangential();
    BoundaryTerms b;
    b.cubic = Real(2) / 3 * slice_integral(trace_wedge(phi, square(phi)));
    b.phi_f = -2 * slice_integral(trace_wedge(phi, f));
    return b;
}

void require_solution(const GeometryConventions& conv, const InvariantField& field, Real lo, Real hi, Real tolerance) {
    for (Real y : log_grid(lo, hi, 60))
        if (!(kw_residual(conv, field, y).norm() <= tolerance))
            throw DomainError("not a solution: identity chain does not apply");
}

Integral energy_integral(const GeometryConventions& conv, const InvariantField& field, Real Densities::*member,
                         const QuadratureSpec& quad, Real lower) {
    return l2_norm_sq([&](Real y) { return densities(conv, field, y).*member; }, quad, lower);
}

ChValue compute_C_H(const GeometryConventions& conv, const InvariantField& field, const QuadratureSpec& quad) {
    ChValue c;
    c.f_sq = energy_integral(conv, field, &Densities::f_sq, quad, 0);
    c.second_sq = energy_integral(conv, field, &Densities::ch_second_sq, quad, 0);
    const Real n1 = std::sqrt(c.f_sq.value), n2 = std::sqrt(c.second_sq.value);
    c.value = n1 + n2;
    c.error = (n1 > 0 ? c.f_sq.error / (2 * n1) : 0) + (n2 > 0 ? c.second_sq.error / (2 * n2) : 0);
    return c;
}

Charge topological_charge(const GeometryConventions& conv, const InvariantField& field, Real a_start, Real a_end,
                          const QuadratureSpec& quad) {
    Charge c;
    const Integral raw = energy_integral(conv, field, &Densities::charge, quad, 0);
    c.quadrature = {raw.value / (4 * kPi * kPi), raw.error / (4 * kPi * kPi)};
    // tr(F^F) = 2 a' (a^2 - 2a) tr(dy ^ omega^3) for A = a omega.
    const Form<Real> omega = InvariantOneForm<Real>::omega().to_form();
    const Form<Real> dy_omega = dy_wedge(omega);
    c.trace_constant = per_volume(trace_wedge(dy_omega, square(omega)));
    auto anti = [](Real a) { return a * a * a / 3 - a * a; };
    c.oracle = sphere_volume() * 2 * c.trace_constant * (anti(a_end) - anti(a_start)) / (4 * kPi * kPi);
    return c;
}

EpsSample eps_sample(const GeometryConventions& conv, const InvariantField& field, Real eps, const QuadratureSpec& quad) {
    EpsSample s;
    s.eps = eps;
    s.boundary = boundary_terms(conv, field, eps);
    QuadratureSpec q = quad;
    q.eps = eps;
    s.volume = l2_norm_sq([&](Real y) { return 2 * densities(conv, field, y).phi_sq; }, q, eps);
    s.combined = s.boundary.phi_f - s.volume.value;
    return s;
}

Integral c0_direct(const GeometryConventions& conv, const InvariantField& field, const QuadratureSpec& quad) {
    return l2_norm_sq(
        [&](Real y) {
            const Densities dn = densities(conv, field, y);
            return dn.f_sq + dn.nabla_bar_sq + dn.completed_sq;
        },
        quad, 0);
}

Real extrapolate_to_zero(const std::vector<Real>& eps, const std::vector<Real>& values) {
    if (eps.size() != values.size() || eps.empty()) throw DomainError("extrapolation needs matching samples");
    // Neville's scheme evaluated at 0.
    std::vector<Real> p = values;
    const std::size_t n = eps.size();
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = 0; i + k < n; ++i)
            p[i] = (eps[i + k] * p[i] - eps[i] * p[i + 1]) / (eps[i + k] - eps[i]);
    return p[0];
}

std::string to_string(Identity id) {
    switch (id) {
        case Identity::BoundaryExpansion: return "boundary-expansion";
        case Identity::CompletedSquare: return "completed-square";
        case Identity::BulkBoundary: return "bulk-boundary";
        case Identity::C0Limit: return "c0-limit";
        case Identity::C0Routes: return "c0-routes";
        case Identity::RefinedBound: return "refined-bound";
    }
    return "?";
}

Identity parse_identity(const std::string& s) {
    for (Identity id : {Identity::BoundaryExpansion, Identity::CompletedSquare, Identity::BulkBoundary,
                        Identity::C0Limit, Identity::C0Routes, Identity::RefinedBound})
        if (to_string(id) == s) return id;
    throw UsageError("unknown identity '" + s + "'");
}

namespace {

struct Sides {
    Integral lhs;
    Real rhs = 0;
};

Sides bulk_boundary_sides(const GeometryConventions& conv, const InvariantField& field, Real eps,
                          const QuadratureSpec& quad) {
    QuadratureSpec q = quad;
    q.eps = eps;
    Sides s;
    s.lhs = l2_norm_sq(
        [&](Real y) {
            const Densities dn = densities(conv, field, y);
            return dn.f_sq + dn.nabla_bar_sq + dn.completed_sq + 2 * dn.phi_sq;
        },
        q, eps);
    s.rhs = boundary_terms(conv, field, eps).phi_f;
    return s;
}

CheckReport relative_report(const std::string& id, const std::string& ref, Real lhs, Real rhs, Real quad_error,
                            double tol) {
    CheckReport r = CheckReport::compare(id, ref, d(rel_gap(lhs, rhs)), 0.0, tol, Provenance::Derived);
    r.detail["lhs"] = d(lhs);
    r.detail["rhs"] = d(rhs);
    r.detail["quadrature_error"] = d(quad_error);
    r.detail["relative_error_budget"] = d(quad_error / std::max<Real>(std::fabs(rhs), 1e-300L));
    return r;
}

struct C0Data {
    std::vector<EpsSample> samples;
    Real limit = 0;
    Integral direct;
};

C0Data c0_data(const GeometryConventions& conv, const InvariantField& field, const IdentityOptions& opt,
               const QuadratureSpec& quad) {
    C0Data c;
    std::vector<Real> e, v;
    for (Real eps : opt.eps_sequence) {
        c.samples.push_back(eps_sample(conv, field, eps, quad));
        e.push_back(eps);
        v.push_back(c.samples.back().combined);
    }
    c.limit = extrapolate_to_zero(e, v);
    c.direct = c0_direct(conv, field, quad);
    return c;
}

}  // namespace

CheckReport check_energy_identity(Identity id, const GeometryConventions& conv, const InvariantField& field,
                                  const IdentityOptions& opt, const QuadratureSpec& quad, const Tolerances& tol) {
    const Real lo = std::min<Real>(opt.eps, *std::min_element(opt.eps_sequence.begin(), opt.eps_sequence.end()));
    require_solution(conv, field, lo, quad.y_max);
    switch (id) {
        case Identity::BulkBoundary: {
            const Sides s = bulk_boundary_sides(conv, field, opt.eps, quad);
            CheckReport r = relative_report("energy.bulk_boundary",
                                            "int_{y>eps} |F|^2 + |nabla-bar phi|^2 + |*3 d_y phi + phi^2|^2 + 2|phi|^2 = "
                                            "-2 int phi ^ F at y = eps",
                                            s.lhs.value, s.rhs, s.lhs.error, tol.get("energy.bulk_boundary"));
            r.detail["eps"] = d(opt.eps);
            return r;
        }
        case Identity::BoundaryExpansion: {
            QuadratureSpec q = quad;
            q.eps = opt.eps;
            const Integral lhs = l2_norm_sq(
                [&](Real y) {
                    const Densities dn = densities(conv, field, y);
                    return dn.f_minus_phi2_sq + dn.d_phi_sq + dn.d_star_phi_sq;
                },
                q, opt.eps);
            const BoundaryTerms b = boundary_terms(conv, field, opt.eps);
            CheckReport r = relative_report("energy.boundary_expansion",
                                            "int |F - phi^2|^2 + |d_A phi|^2 + |d_A* phi|^2 = (2/3) int phi^3 - 2 int phi ^ F",
                                            lhs.value, b.cubic + b.phi_f, lhs.error, tol.get("energy.boundary_expansion"));
            r.detail["eps"] = d(opt.eps);
            return r;
        }
        case Identity::CompletedSquare: {
            QuadratureSpec q = quad;
            q.eps = opt.eps;
            const Integral lhs = l2_norm_sq(
                [&](Real y) {
                    const Densities dn = densities(conv, field, y);
                    return dn.nabla_sq + dn.phi2_sq;
                },
                q, opt.eps);
            const Integral rhs = l2_norm_sq(
                [&](Real y) {
                    const Densities dn = densities(conv, field, y);
                    return dn.nabla_bar_sq + dn.completed_sq;
                },
                q, opt.eps);
            const BoundaryTerms b = boundary_terms(conv, field, opt.eps);
            CheckReport r = relative_report(
                "energy.completed_square",
                "int |nabla phi|^2 + |phi^2|^2 - (2/3) int phi^3 = int |nabla-bar phi|^2 + |*3 d_y phi + phi^2|^2",
                lhs.value - b.cubic, rhs.value, lhs.error + rhs.error, tol.get("energy.completed_square"));
            r.detail["eps"] = d(opt.eps);
            return r;
        }
        case Identity::C0Limit: {
            if (opt.eps_sequence.size() < 3) throw DomainError("eps sequence needs three values");
            const C0Data c = c0_data(conv, field, opt, quad);
            const auto& s = c.samples;
            const Real inc1 = std::fabs(s[1].combined - s[0].combined);
            const Real inc2 = std::fabs(s[2].combined - s[1].combined);
            const Real expected = (s[0].eps - s[1].eps) / (s[1].eps - s[2].eps);
            CheckReport r = CheckReport::compare("energy.c0_increments",
                                                 "increments of the divergent combination shrink linearly in eps",
                                                 d(inc1 / inc2), d(expected), tol.get("energy.c0_increments"),
                                                 Provenance::Derived);
            for (std::size_t k = 0; k < s.size(); ++k)
                r.detail["combined_eps_" + std::to_string(k)] = d(s[k].combined);
            r.detail["limit"] = d(c.limit);
            return r;
        }
        case Identity::C0Routes: {
            const C0Data c = c0_data(conv, field, opt, quad);
            CheckReport r = relative_report("energy.c0_routes",
                                            "eps-limit of the divergent combination equals the full bulk integral",
                                            c.limit, c.direct.value, c.direct.error, tol.get("energy.c0_routes"));
            return r;
        }
        case Identity::RefinedBound: {
            const EnergyReport rep = energy_report(conv, field, quad, opt, tol);
            const Real lhs = rep.entry("ym_energy").value + rep.entry("nabla_bar_energy").value +
                             rep.entry("completed_square_energy").value / 2;
            return CheckReport::at_most("energy.refined_bound",
                                        "int |F|^2 + |nabla-bar phi|^2 + (1/2)|*3 d_y phi + phi^2|^2 <= C", d(lhs),
                                        d(rep.entry("bound_C").value), tol.get("energy.refined_bound"),
                                        Provenance::Published);
        }
    }
    throw DomainError("unknown identity");
}

std::vector<SweepRow> identity_sweep(Identity id, const GeometryConventions& conv, const InvariantField& field,
                                     const std::vector<Real>& eps_values, const QuadratureSpec& quad) {
    std::vector<SweepRow> rows;
    for (Real eps : eps_values) {
        if (id == Identity::BulkBoundary) {
            const Sides s = bulk_boundary_sides(conv, field, eps, quad);
            rows.push_back({eps, s.lhs.value, s.rhs, s.lhs.value - s.rhs});
        } else if (id == Identity::C0Limit) {
            const EpsSample s = eps_sample(conv, field, eps, quad);
            rows.push_back({eps, s.volume.value, s.boundary.phi_f, s.combined});
        } else {
            throw DomainError("sweeps exist for bulk-boundary and c0-limit only");
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------

Real integrating_factor(const std::function<Real(Real)>& h, const std::function<Real(Real)>& alpha, Real y,
                        const QuadratureSpec& quad) {
    if (!(y > 0)) throw DomainError("integrating factor needs y > 0");
    QuadratureSpec q = quad;
    q.tail_rate = 2;
    Real upper = 0, lower = 0;
    try {
        upper = y < q.y_max ? integrate_halfline(h, y, q).value : 0;
    } catch (const NumericalError& e) {
        throw NumericalError(std::string("divergent exponent integral int_y^inf h: ") + e.what());
    }
    try {
        lower = integrate_range(alpha, 0, y, q).value;
    } catch (const NumericalError& e) {
        throw NumericalError(std::string("divergent exponent integral int_0^y alpha: ") + e.what());
    }
    const Real f = std::exp(-2 * upper + lower);
    if (!std::isfinite(f) || !(f > 0)) throw NumericalError("integrating factor is not a positive finite number");
    return f;
}

void SyntheticPerturbation::validate() const {
    if (power < 1) throw DomainError("perturbation must vanish like O(y) at y = 0");
    if (!(kappa > 0)) throw DomainError("perturbation must decay exponentially");
    if (!(beta >= 0) || !std::isfinite(amplitude)) throw DomainError("perturbation parameters out of range");
}

Jet2<Real> SyntheticPerturbation::q(Real y) const {
    const Real A = amplitude, k = kappa, b = beta;
    const int p = power;
    return jet2<Real>(
        [A, k, b, p](const auto& t) {
            using std::exp;
            using T = std::decay_t<decltype(t)>;
            T pw = t;
            for (int i = 1; i < p; ++i) pw = pw * t;
            return T(A) * pw * exp(T(-k) * t) * (T(1) + T(b) * t);
        },
        y);
}

SyntheticPerturbation SyntheticPerturbation::random(Rng& rng) {
    SyntheticPerturbation p;
    p.amplitude = rng.uniform(0.2L, 2) * (rng.unit() < 0.5L ? -1 : 1);
    p.kappa = rng.uniform(2, 4);
    p.beta = rng.uniform(0, 1);
    p.power = 1;
    const int kind = static_cast<int>(rng.integer(0, 3));
    for (auto& row : p.m.c)
        for (auto& x : row) x = rng.uniform(-1, 1);
    if (kind == 1) p.m = InvariantOneForm<Real>::omega();
    if (kind == 2) p.m = project(2, p.m) + project(3, p.m);
    return p;
}

CrossTermConstants cross_term_constants(const GeometryConventions& conv, const QuadratureSpec& quad) {
    CrossTermConstants k;
    const Real w = omega_norm();
    const int n = 4000;
    for (int i = 0; i < n; ++i) {
        const Real y = 1 + (quad.y_max - 1) * i / (n - 1);
        k.c_2 = std::max(k.c_2, he_b(y) * w * std::exp(2 * y));
    }
    k.kappa_2 = kPi * kPi * std::exp(Real(-4)) * k.c_2 * k.c_2;
    k.ch = compute_C_H(conv, he_field(), quad).value;
    k.c_h = w * std::sqrt(sphere_volume()) * k.ch;
    k.c_3 = w * w * sphere_volume() / 2;
    k.c_1 = k.kappa_2 + k.c_h + k.c_3;
    return k;
}

namespace {

struct ChainPoint {
    Real tr2 = 0;        // |2 tr(phi^H ^ *rho)|
    Real line2 = 0;      // 2 h |rho1| |omega|
    Real fdf = 0;        // f^{-1} d_y(f |rho1|) |omega|
    Real rho1_sq = 0, rho1 = 0, rho23_sq = 0, rho_sq = 0;
    Real x1w = 0;        // |*3 d_y rho1 + [phi^H ^ rho1] + rho1 ^ rho1| |omega|
    Real xw = 0;         // same with (rho ^ rho)^(1)
    Real z = 0, z_sq = 0;
    Real split_error = 0;
};

InvariantOneForm<Real> dual_of_square(const InvariantOneForm<Real>& u) { return star3(kGoldenConventions, wedge(u)); }
InvariantOneForm<Real> dual_of_bracket(const InvariantOneForm<Real>& u, const InvariantOneForm<Real>& v) {
    return star3(kGoldenConventions, wedge_bracket(u, v));
}

ChainPoint chain_point(const SyntheticPerturbation& p, Real y) {
    const Real w = omega_norm();
    const Jet2<Real> hj = jet2<Real>([](const auto& t) { return he_b(t); }, y);
    const Jet2<Real> qj = p.q(y);
    const auto omega = InvariantOneForm<Real>::omega();
    const InvariantOneForm<Real> phi_h = hj.value * omega;
    const InvariantOneForm<Real> rho = qj.value * p.m;
    const InvariantOneForm<Real> drho = qj.d1 * p.m;
    const InvariantOneForm<Real> rho1 = project(1, rho), drho1 = project(1, drho);
    const Real alpha = rho1.c[0][0], dalpha = drho1.c[0][0];

    ChainPoint c;
    c.tr2 = 2 * std::fabs(inner(phi_h, rho));
    c.rho1 = std::fabs(alpha) * w;
    c.rho1_sq = norm_sq(rho1);
    c.rho23_sq = norm_sq(project(2, rho)) + norm_sq(project(3, rho));
    c.rho_sq = norm_sq(rho);
    c.line2 = 2 * hj.value * c.rho1 * w;
    const Real sgn = alpha > 0 ? 1 : (alpha < 0 ? -1 : 0);
    c.fdf = (sgn * dalpha * w + (2 * hj.value + alpha) * c.rho1) * w;

    // Duals of tangential 2-forms: *3 d_y rho1 is d_y rho1 itself.
    const InvariantOneForm<Real> base = drho1 + dual_of_bracket(phi_h, rho1);
    const InvariantOneForm<Real> x1 = base + dual_of_square(rho1);
    const InvariantOneForm<Real> x = base + project(1, dual_of_square(rho));
    c.x1w = std::sqrt(norm_sq(x1)) * w;
    c.xw = std::sqrt(norm_sq(x)) * w;

    const InvariantOneForm<Real> phi = phi_h + rho;
    const InvariantOneForm<Real> z = (hj.d1 * omega + drho) + dual_of_square(phi);
    c.z_sq = norm_sq(z);
    c.z = std::sqrt(c.z_sq);
    const InvariantOneForm<Real> y_h = hj.d1 * omega + dual_of_square(phi_h);
    c.split_error = std::sqrt(norm_sq(x - (project(1, z) - y_h)));
    return c;
}

}  // namespace

ChainResult perturbation_chain(const SyntheticPerturbation& pert, const CrossTermConstants& k,
                               const GeometryConventions& conv, const QuadratureSpec& quad) {
    (void)conv;
    pert.validate();
    std::map<Real, ChainPoint> cache;
    auto at = [&](Real y) -> const ChainPoint& {
        auto it = cache.find(y);
        if (it == cache.end()) it = cache.emplace(y, chain_point(pert, y)).first;
        return it->second;
    };
    QuadratureSpec q = quad;
    q.tail_rate = 2;
    const Real vol = sphere_volume();
    auto near = [&](Real ChainPoint::*m) { return vol * integrate_range([&](Real y) { return at(y).*m; }, 0, 1, q).value; };
    auto far = [&](std::function<Real(Real)> f) { return vol * integrate_halfline(f, 1, q).value; };
    auto far_m = [&](Real ChainPoint::*m) { return far([&](Real y) { return at(y).*m; }); };

    const Real w = omega_norm();
    ChainResult res;
    // Region y > 1.
    const Real far_tr = far_m(&ChainPoint::tr2);
    const Real far_mid = far([&](Real y) { return 2 * k.c_2 * std::exp(-2 * y) * at(y).rho1; });
    const Real far_rhs = k.kappa_2 + far_m(&ChainPoint::rho1_sq) / 2;
    res.steps.push_back({"perturb.cauchy_schwarz.pointwise", "|2tr(phi^H ^ *rho)| <= 2 C_2 e^{-2y} |rho1| on y > 1",
                         far_tr, far_mid});
    res.steps.push_back({"perturb.cauchy_schwarz.split", "int 2 C_2 e^{-2y}|rho1| <= pi^2 e^-4 C_2^2 + (1/2) int |rho1|^2",
                         far_mid, far_rhs});

    // Region (0, 1].
    const Real l1 = near(&ChainPoint::tr2);
    const Real l2 = near(&ChainPoint::line2);
    const Real rho1_near = near(&ChainPoint::rho1_sq);
    const Real b1 = vol * at(1).rho1 * w;
    const Real l3 = near(&ChainPoint::fdf) + rho1_near - b1;
    const Real l4 = l3 + b1;
    const Real x1_near = near(&ChainPoint::x1w);
    const Real l5 = x1_near + rho1_near;
    res.steps.push_back({"perturb.chain.trace_to_h", "|2tr(phi^H ^ *rho)| <= 2h|rho1||omega| on (0,1]", l1, l2});
    res.steps.push_back({"perturb.chain.integrating_factor",
                         "int 2h|rho1||omega| <= int f^-1 d_y(f|rho1|)|omega| + int |rho1|^2 - boundary", l2, l3});
    res.steps.push_back({"perturb.chain.discarded_boundary", "the discarded slice term -int_{y=1}|rho1||omega| is <= 0", -b1, 0});
    res.steps.push_back({"perturb.chain.factor_to_bracket",
                         "int f^-1 d_y(f|rho1|)|omega| <= int |*3 d_y rho1 + [phi^H, rho1] + rho1^rho1||omega|", l4, l5});

    // Pointwise form of the V1 bound on a grid.
    Real min_slack = INFINITY, split = 0;
    for (int i = 1; i <= 200; ++i) {
        const Real y = Real(i) / 200;
        const ChainPoint& c = at(y);
        min_slack = std::min(min_slack, c.xw + c.rho23_sq / 2 - c.x1w);
        split = std::max(split, c.split_error);
    }
    res.pointwise_min_slack = min_slack;
    res.v1_split_error = split;

    const Real xw_near = near(&ChainPoint::xw);
    const Real zw_near = vol * w * integrate_range([&](Real y) { return at(y).z; }, 0, 1, q).value;
    const Real rho23_near = near(&ChainPoint::rho23_sq);
    const Real zsq_near = near(&ChainPoint::z_sq);
    const Real mid24 = k.c_h + zw_near + rho23_near / 2;
    const Real rhs24 = k.c_h + k.c_3 + zsq_near / 2 + rho23_near / 2;
    res.steps.push_back({"perturb.line_bound.first", "int |X1||omega| <= c_H + int |Z||omega| + (1/2) int |rho2|^2 + |rho3|^2",
                         x1_near, mid24});
    res.steps.push_back({"perturb.line_bound.second", "c_H + int |Z||omega| + ... <= c_H + c_3 + (1/2) int |Z|^2 + ...",
                         mid24, rhs24});
    res.steps.push_back({"perturb.line_bound.v1_estimate", "int |X||omega| <= c_H + int |Z||omega| on (0,1]", xw_near,
                         k.c_h + zw_near});

    const Real total_tr = l1 + far_tr;
    const Real rho_all = near(&ChainPoint::rho_sq) + far_m(&ChainPoint::rho_sq);
    const Real z_all = zsq_near + far_m(&ChainPoint::z_sq);
    res.steps.push_back({"perturb.final", "int |2tr(phi^H ^ *rho)| <= C_1 + int |rho|^2 + (1/2) int |*3 d_y phi + phi^2|^2",
                         total_tr, k.c_1 + rho_all + z_all / 2});
    return res;
}

std::vector<CheckReport> cross_term_suite(std::uint64_t seed, int n, const GeometryConventions& conv,
                                      const QuadratureSpec& quad, const Tolerances& tol) {
    if (n <= 0) throw DomainError("empty suite");
    const CrossTermConstants k = cross_term_constants(conv, quad);
    std::vector<SyntheticPerturbation> perts;
    {
        SyntheticPerturbation zero;
        zero.amplitude = 0;
        zero.m = InvariantOneForm<Real>::omega();
        perts.push_back(zero);
        SyntheticPerturbation pure;
        pure.kappa = 1;
        pure.m = InvariantOneForm<Real>::omega();
        perts.push_back(pure);
        SyntheticPerturbation mixed;
        mixed.kappa = 1;
        const RForm m = mu(1) + nu(2);
        for (int i = 0; i < 3; ++i)
            for (int a = 0; a < 3; ++a) mixed.m.c[i][a] = m.c[i][a].convert_to<Real>();
        perts.push_back(mixed);
    }
    for (int i = 0; i < n; ++i) {
        Rng rng = Rng::stream(seed, 1000 + i);
        perts.push_back(SyntheticPerturbation::random(rng));
    }

    std::map<std::string, std::pair<ChainStep, Real>> worst;  // id -> (step, max relative violation)
    Real pointwise = INFINITY, split = 0;
    for (const auto& p : perts) {
        const ChainResult r = perturbation_chain(p, k, conv, quad);
        for (const auto& s : r.steps) {
            const Real viol = (s.lhs - s.rhs) / (1 + std::fabs(s.rhs));
            auto it = worst.find(s.id);
            if (it == worst.end() || viol > it->second.second) worst[s.id] = {s, viol};
        }
        pointwise = std::min(pointwise, r.pointwise_min_slack);
        split = std::max(split, r.v1_split_error);
    }
    std::vector<CheckReport> out;
    for (const auto& [id, sv] : worst) {
        CheckReport r = CheckReport::at_most(id, sv.first.ref, d(sv.second), 0.0, tol.get(id), Provenance::Published);
        r.detail["worst_lhs"] = d(sv.first.lhs);
        r.detail["worst_rhs"] = d(sv.first.rhs);
        r.detail["perturbations"] = static_cast<double>(perts.size());
        r.note = "computed = largest (lhs - rhs)/(1 + |rhs|) over all perturbations";
        out.push_back(r);
    }
    CheckReport pw = CheckReport::at_most("perturb.pointwise", "|X1||omega| <= |X||omega| + (1/2)(|rho2|^2 + |rho3|^2)",
                                          d(-pointwise), 0.0, tol.get("perturb.pointwise"), Provenance::Published);
    pw.note = "computed = minus the smallest pointwise slack on a (0,1] grid";
    out.push_back(pw);
    out.push_back(CheckReport::compare("perturb.v1_split", "(*3 d_y phi + phi^2)^(1) = Y_H + X", d(split), 0.0,
                                       tol.get("perturb.v1_split"), Provenance::Published));
    CheckReport c = CheckReport::info("perturb.constants", "engine constants of the cross-term bound", d(k.c_1));
    c.detail["C_2"] = d(k.c_2);
    c.detail["kappa_2"] = d(k.kappa_2);
    c.detail["c_H"] = d(k.c_h);
    c.detail["c_3"] = d(k.c_3);
    c.detail["C_H"] = d(k.ch);
    c.detail["printed_sqrt_4pi_C_H"] = d(std::sqrt(4 * kPi) * k.ch);
    c.detail["printed_3pi"] = d(3 * kPi);
    c.detail["printed_C_2_squared"] = d(k.c_2 * k.c_2);
    out.push_back(c);
    return out;
}

// ---------------------------------------------------------------------------

const EnergyEntry& EnergyReport::entry(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return e;
    throw DomainError("no energy entry named " + name);
}

nlohmann::ordered_json EnergyReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["model"] = model;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        nlohmann::ordered_json x;
        x["name"] = e.name;
        x["value"] = d(e.value);
        x["error_estimate"] = d(e.error_estimate);
        x["statement"] = e.statement;
        arr.push_back(x);
    }
    j["entries"] = arr;
    j["checks"] = kwlab::to_json(checks, "energy")["checks"];
    return j;
}

EnergyReport energy_report(const GeometryConventions& conv, const InvariantField& field, const QuadratureSpec& quad,
                             const IdentityOptions& opt, const Tolerances& tol, bool require_kw) {
    if (require_kw) {
        const Real lo = *std::min_element(opt.eps_sequence.begin(), opt.eps_sequence.end());
        require_solution(conv, field, lo, quad.y_max);
    }
    EnergyReport rep;
    rep.model = field.name;
    auto add = [&](std::string name, Real v, Real e, std::string ref) {
        rep.entries.push_back({std::move(name), v, e, std::move(ref)});
    };
    const Integral f = energy_integral(conv, field, &Densities::f_sq, quad, 0);
    const Integral nb = energy_integral(conv, field, &Densities::nabla_bar_sq, quad, 0);
    const Integral cs = energy_integral(conv, field, &Densities::completed_sq, quad, 0);
    add("ym_energy", f.value, f.error, "int |F_A|^2 over S^3 x R+");
    add("nabla_bar_energy", nb.value, nb.error, "int |nabla-bar_A phi|^2");
    add("completed_square_energy", cs.value, cs.error, "int |*3 d_y phi + phi^2|^2");
    const Real c0_direct_v = f.value + nb.value + cs.value;
    add("C0_direct", c0_direct_v, f.error + nb.error + cs.error, "C_0 as the full bulk integral of the positive terms");

    std::vector<Real> e, v;
    for (Real eps : opt.eps_sequence) {
        const EpsSample s = eps_sample(conv, field, eps, quad);
        e.push_back(eps);
        v.push_back(s.combined);
    }
    const Real c0_limit = extrapolate_to_zero(e, v);
    add("C0_limit", c0_limit, std::fabs(c0_limit - c0_direct_v), "C_0 as the eps-limit of -2 int phi^F - int 2|phi|^2");
    // The combination as literally written, int |phi|^2 + int phi ^ F, is -C_0/2.
    add("C0_literal_combination", -c0_limit / 2, 0, "limit of int_{y>eps}|phi|^2 + int phi ^ F at y = eps");

    const ChValue ch = compute_C_H(conv, field, quad);
    add("C_H", ch.value, ch.error, "||F_A|| + ||dy ^ d_y phi + *(phi^phi)||");
    const CrossTermConstants k = cross_term_constants(conv, quad);
    add("C_2", k.c_2, 0, "sup_{y>=1} |phi^H| e^{2y}");
    add("kappa_2", k.kappa_2, 0, "pi^2 e^-4 C_2^2, the y > 1 constant");
    add("c_H", k.c_h, 0, "|omega| sqrt(vol S^3) C_H");
    add("c_3", k.c_3, 0, "(1/2)|omega|^2 vol S^3");
    add("C_1", k.c_1, 0, "kappa_2 + c_H + c_3");
    const Real bound = c0_limit + 2 * k.c_1;
    add("bound_C", bound, 0, "C = C_0 + 2 C_1");

    const Real a0 = field.a(quad.eps).value[0][0];
    const Real a1 = field.a(quad.y_max).value[0][0];
    const Charge q = topological_charge(conv, field, a0, a1, quad);
    add("charge", q.quadrature.value, q.quadrature.error, "(1/4 pi^2) int tr(F_A ^ F_A)");

    const Real others = nb.value + cs.value;
    CheckReport ym = CheckReport::at_most("energy.ym_bound", "int |F_A|^2 <= C_0", d(f.value), d(c0_limit),
                                          tol.get("energy.ym_bound"), Provenance::Derived);
    ym.detail["slack"] = d(c0_limit - f.value);
    ym.detail["other_terms"] = d(others);
    rep.checks.push_back(ym);
    CheckReport slack = CheckReport::compare("energy.ym_slack", "C_0 - int |F|^2 equals the other positive terms",
                                             d(rel_gap(c0_limit - f.value, others)), 0.0, tol.get("energy.ym_slack"),
                                             Provenance::Derived);
    if (!(others > 0) && f.value > 0) slack.status = Status::Fail;
    slack.detail["other_terms"] = d(others);
    rep.checks.push_back(slack);
    rep.checks.push_back(CheckReport::at_most("energy.ym_universal_bound", "int |F_A|^2 <= C", d(f.value), d(bound),
                                              tol.get("energy.ym_universal_bound"), Provenance::Published));
    rep.checks.push_back(CheckReport::at_most("energy.refined_bound",
                                              "int |F|^2 + |nabla-bar phi|^2 + (1/2)|*3 d_y phi + phi^2|^2 <= C",
                                              d(f.value + nb.value + cs.value / 2), d(bound),
                                              tol.get("energy.refined_bound"), Provenance::Published));
    return rep;
}

}  // namespace kwlab
