#include "kwlab/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "kwlab/error.hpp"
#include "kwlab/spline.hpp"

namespace kwlab {

namespace {

using State = std::array<Real, 2>;

std::string fmt(Real x) {
    std::ostringstream os;
    os << std::setprecision(12) << static_cast<double>(x);
    return os.str();
}

/// Residual of the ansatz at one point: (dy^omega coefficient, omega^2 coefficient),
/// plus the size of everything outside that span.
struct AnsatzResidual {
    Real normal = 0, tangential = 0, stray = 0;
};

AnsatzResidual ansatz_residual(const GeometryConventions& conv, Real a, Real b, Real da, Real db) {
    FieldJet jet;
    jet.y = 1;  // the system is autonomous; y only labels the point
    const Mat3<Real> id = identity3<Real>();
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            jet.a.value[i][k] = a * id[i][k];
            jet.a.d1[i][k] = da * id[i][k];
            jet.phi.value[i][k] = b * id[i][k];
            jet.phi.d1[i][k] = db * id[i][k];
        }
    const InvariantResidual r = kw_residual(conv, jet);
    AnsatzResidual out;
    out.normal = r.first.normal.c[0][0];
    out.tangential = r.first.tangential_dual.c[0][0];
    Real stray = r.second * r.second;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            const Real n = r.first.normal.c[i][k] - (i == k ? out.normal : 0);
            const Real t = r.first.tangential_dual.c[i][k] - (i == k ? out.tangential : 0);
            stray += n * n + t * t;
        }
    out.stray = std::sqrt(stray);
    return out;
}

/// Exact coefficients of a quadratic from seven evaluations.
Quadratic fit_quadratic(const std::function<Real(Real, Real)>& p) {
    Quadratic q;
    q.c0 = p(0, 0);
    const Real pa = p(1, 0), ma = p(-1, 0), pb = p(0, 1), mb = p(0, -1);
    q.ca = (pa - ma) / 2;
    q.caa = (pa + ma) / 2 - q.c0;
    q.cb = (pb - mb) / 2;
    q.cbb = (pb + mb) / 2 - q.c0;
    q.cab = p(1, 1) - q.c0 - q.ca - q.cb - q.caa - q.cbb;
    return q;
}

Quadratic combine(Real s, const Quadratic& x, Real t, const Quadratic& y) {
    return {s * x.c0 + t * y.c0,   s * x.ca + t * y.ca,   s * x.cb + t * y.cb,
            s * x.caa + t * y.caa, s * x.cab + t * y.cab, s * x.cbb + t * y.cbb};
}

}  // namespace

std::string Quadratic::to_string() const {
    std::string s;
    auto term = [&](Real c, const char* mono) {
        if (std::fabs(c) < 1e-12L) return;
        s += (c < 0 ? (s.empty() ? "-" : " - ") : (s.empty() ? "" : " + "));
        const Real m = std::fabs(c);
        if (std::fabs(m - 1) > 1e-12L || *mono == 0) s += fmt(m);
        s += mono;
    };
    term(caa, "a^2");
    term(cab, "ab");
    term(cbb, "b^2");
    term(ca, "a");
    term(cb, "b");
    term(c0, "");
    return s.empty() ? "0" : s;
}

std::array<std::array<Real, 2>, 2> ReducedSystem::jacobian(Real a, Real b) const {
    return {{{fa.d_a(a, b), fa.d_b(a, b)}, {fb.d_a(a, b), fb.d_b(a, b)}}};
}

std::string ReducedSystem::describe() const { return "a' = " + fa.to_string() + ", b' = " + fb.to_string(); }

ReducedSystem derive_reduced_system(const GeometryConventions& conv) {
    // The residual is affine in (a', b'): R = M (a', b') + P(a, b).
    auto p_normal = [&](Real a, Real b) { return ansatz_residual(conv, a, b, 0, 0).normal; };
    auto p_tang = [&](Real a, Real b) { return ansatz_residual(conv, a, b, 0, 0).tangential; };
    const Quadratic pn = fit_quadratic(p_normal), pt = fit_quadratic(p_tang);
    const AnsatzResidual zero = ansatz_residual(conv, 0, 0, 0, 0);
    const AnsatzResidual ua = ansatz_residual(conv, 0, 0, 1, 0);
    const AnsatzResidual ub = ansatz_residual(conv, 0, 0, 0, 1);
    const Real m00 = ua.normal - zero.normal, m01 = ub.normal - zero.normal;
    const Real m10 = ua.tangential - zero.tangential, m11 = ub.tangential - zero.tangential;
    const Real det = m00 * m11 - m01 * m10;
    if (std::fabs(det) < 1e-12L) throw NumericalError("calibration inconsistent: derivative terms are degenerate");

    ReducedSystem sys;
    // (a', b') = -M^{-1} P
    sys.fa = combine(-m11 / det, pn, m01 / det, pt);
    sys.fb = combine(m10 / det, pn, -m00 / det, pt);

    // Closure: the residual of the fitted system must vanish at unrelated points.
    Real worst = 0;
    const Real pts[][2] = {{0.3L, -1.7L}, {2.5L, 0.4L}, {-1.2L, 3.1L}, {0.9L, 0.9L}, {4.0L, -2.5L}};
    for (const auto& pt2 : pts) {
        const auto [da, db] = sys.rhs(pt2[0], pt2[1]);
        const AnsatzResidual r = ansatz_residual(conv, pt2[0], pt2[1], da, db);
        worst = std::max({worst, std::fabs(r.normal), std::fabs(r.tangential), r.stray});
    }
    sys.closure_residual = worst;
    if (!(worst <= 1e-12L)) throw NumericalError("calibration inconsistent: ansatz does not close (misfit " + fmt(worst) + ")");
    return sys;
}

std::array<Real, 2> system_residual(const ReducedSystem& sys, const ScalarProfile& a, const ScalarProfile& b, Real y) {
    const Jet2<Real> ja = a(y), jb = b(y);
    const auto [fa, fb] = sys.rhs(ja.value, jb.value);
    return {ja.d1 - fa, jb.d1 - fb};
}

std::array<Real, 2> jacobian_eigenvalues(const ReducedSystem& sys, Real a, Real b) {
    const auto j = sys.jacobian(a, b);
    const Real tr = j[0][0] + j[1][1];
    const Real det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    const Real disc = tr * tr / 4 - det;
    if (disc < 0) throw NumericalError("complex Jacobian eigenvalues");
    const Real s = std::sqrt(disc);
    return {tr / 2 - s, tr / 2 + s};
}

// ---------------------------------------------------------------------------

Real IndicialExpansion::a_at(Real y) const {
    Real s = 0;
    for (int k = order; k >= 0; --k) s = s * y + a[k];
    return s;
}

Real IndicialExpansion::b_at(Real y) const {
    Real s = 0;
    for (int k = order; k >= 0; --k) s = s * y + b[k + 1];
    return s + b[0] / y;
}

IndicialExpansion indicial_expand(const ReducedSystem& sys, int order, Real free_value, std::optional<Real> a0) {
    if (order < 0 || order > 6) throw DomainError("series order must be between 0 and 6");
    const Quadratic& F = sys.fa;
    const Quadratic& G = sys.fb;
    IndicialExpansion e;
    e.order = order;
    e.free_value = free_value;
    e.a.assign(order + 1, 0);
    e.b.assign(order + 2, 0);

    // Coefficient of y^m in a quadratic evaluated on the current (truncated) series.
    auto coeff = [&](const Quadratic& q, int m) {
        auto A = [&](int k) { return k >= 0 && k <= order ? e.a[k] : Real(0); };
        auto B = [&](int k) { return k >= -1 && k <= order ? e.b[k + 1] : Real(0); };
        Real s = (m == 0 ? q.c0 : 0) + q.ca * A(m) + q.cb * B(m);
        for (int j = 0; j <= m; ++j) s += q.caa * A(j) * A(m - j);
        for (int j = 0; j <= m + 1; ++j) s += q.cab * A(j) * B(m - j);
        for (int j = -1; j <= m + 1; ++j) s += q.cbb * B(j) * B(m - j);
        return s;
    };

    // Leading balance: b ~ beta / y with -beta = cbb beta^2; a has no y^-2 term.
    if (G.cbb == 0) throw NumericalError("inconsistent matching at order -1: no Nahm pole balance");
    if (std::fabs(F.cbb) > 1e-12L) throw NumericalError("inconsistent matching at order -1: a would need a pole");
    const Real beta = -1 / G.cbb;
    e.b[0] = beta;

    for (int k = 0; k <= order; ++k) {
        // k a_k = [F]_{k-1}, k b_k = [G]_{k-1}; the new unknowns enter through b_{-1}.
        const Real m00 = k - F.cab * beta, m01 = -2 * F.cbb * beta;
        const Real m10 = -G.cab * beta, m11 = k - 2 * G.cbb * beta;
        const Real rf = coeff(F, k - 1), rg = coeff(G, k - 1);
        const Real det = m00 * m11 - m01 * m10;
        if (k == 0 && a0) {
            // The caller fixes a_0; the order-0 balance must still hold.
            e.a[0] = *a0;
            if (std::fabs(coeff(F, -1)) > 1e-12L)
                throw NumericalError("inconsistent matching at order 0: a(0) = " + fmt(*a0) + " needs a log term");
            e.b[1] = coeff(G, -1) / m11;
            continue;
        }
        if (std::fabs(det) > 1e-12L) {
            e.a[k] = (rf * m11 - m01 * rg) / det;
            e.b[k + 1] = (m00 * rg - m10 * rf) / det;
            continue;
        }
        // Resonance: only the a-row may degenerate.
        if (std::fabs(m00) > 1e-12L || std::fabs(m01) > 1e-12L || std::fabs(m11) < 1e-12L)
            throw NumericalError("inconsistent matching at order " + std::to_string(k) + ": unsupported resonance");
        if (std::fabs(rf) > 1e-12L)
            throw NumericalError("inconsistent matching at order " + std::to_string(k) + ": needs a log term");
        e.free_orders.push_back(k);
        e.a[k] = e.free_orders.size() == 1 ? free_value : 0;
        e.b[k + 1] = (rg - m10 * e.a[k]) / m11;
    }
    return e;
}

// ---------------------------------------------------------------------------

std::vector<Real> uniform_grid(Real lo, Real hi, Real h) {
    if (!(h > 0) || !(hi > lo)) throw DomainError("uniform grid needs lo < hi and h > 0");
    const long n = std::lround(static_cast<double>((hi - lo) / h));
    std::vector<Real> g;
    for (long i = 0; i <= n; ++i) g.push_back(i == n ? hi : lo + (hi - lo) * i / n);
    return g;
}

ScalarProfile Profile::a_spline() const {
    auto s = std::make_shared<CubicSpline>(y, a);
    return [s](Real t) { return (*s)(t); };
}

ScalarProfile Profile::b_spline() const {
    auto s = std::make_shared<CubicSpline>(y, b);
    return [s](Real t) { return (*s)(t); };
}

namespace {

/// Fills `p` as it goes, so a blow-up leaves the last accepted states behind.
void run_ivp(const ReducedSystem& sys, Real y0, State state, Real y1, const IvpOptions& opt,
             const std::vector<Real>& grid, Profile& p) {
    namespace ode = boost::numeric::odeint;
    if (!(y0 > 0) || !(y1 > 0)) throw DomainError("integration needs y0, y1 > 0");
    if (!std::isfinite(state[0]) || !std::isfinite(state[1])) throw DomainError("initial state is not finite");
    auto check = [&](const State& x, Real y) {
        if (!(std::fabs(x[0]) <= opt.blowup && std::fabs(x[1]) <= opt.blowup))
            throw BlowUpError("blow-up at y = " + fmt(y), y);
    };
    auto rhs = [&](const State& x, State& dx, Real y) {
        check(x, y);
        dx = sys.rhs(x[0], x[1]);
    };
    auto observe = [&](const State& x, Real y) {
        check(x, y);
        p.y.push_back(y);
        p.a.push_back(x[0]);
        p.b.push_back(x[1]);
    };
    const Real dir = y1 >= y0 ? 1 : -1;
    using Stepper = ode::runge_kutta_fehlberg78<State, Real>;
    if (opt.fixed_step > 0) {
        const long n = std::lround(static_cast<double>(std::fabs(y1 - y0) / opt.fixed_step));
        if (n < 1) throw DomainError("fixed step larger than the interval");
        ode::integrate_n_steps(Stepper(), rhs, state, y0, (y1 - y0) / n, static_cast<std::size_t>(n), observe);
        return;
    }
    auto stepper = ode::make_controlled(opt.abs_tol, opt.rel_tol, Stepper());
    if (!grid.empty()) {
        if (grid.front() != y0 || grid.back() != y1) throw DomainError("output grid must start at y0 and end at y1");
        ode::integrate_times(stepper, rhs, state, grid.begin(), grid.end(), dir * opt.initial_step, observe);
    } else {
        ode::integrate_adaptive(stepper, rhs, state, y0, y1, dir * opt.initial_step, observe);
    }
}

}  // namespace

Profile integrate_ivp(const ReducedSystem& sys, Real y0, State state, Real y1, const IvpOptions& opt,
                      const std::vector<Real>& grid) {
    Profile p;
    run_ivp(sys, y0, state, y1, opt, grid, p);
    return p;
}

ShootTrial shoot_trial(const ReducedSystem& sys, Real parameter, const ShootOptions& opt) {
    const IndicialExpansion e = indicial_expand(sys, opt.order, parameter);
    ShootTrial t{parameter, 0, opt.y_end, false};
    Profile p;
    try {
        run_ivp(sys, opt.y0, {e.a_at(opt.y0), e.b_at(opt.y0)}, opt.y_end, opt.ivp, {}, p);
    } catch (const BlowUpError& err) {
        t.blew_up = true;
        t.y_stop = err.where();
    }
    if (p.y.empty()) throw NumericalError("shooting trial produced no accepted step");
    // Leaving the saddle at the origin follows the unstable direction (1, -1).
    const Real diff = p.a.back() - p.b.back();
    t.side = diff > 0 ? 1 : (diff < 0 ? -1 : 0);
    return t;
}

ShootResult shoot_for_decay(const ReducedSystem& sys, const ShootOptions& opt) {
    if (!(opt.y0 > 0) || opt.y0 > 0.2L) throw DomainError("series start must lie in (0, 0.2]");
    ShootResult r;
    ShootTrial lo = shoot_trial(sys, opt.param_lo, opt);
    ShootTrial hi = shoot_trial(sys, opt.param_hi, opt);
    r.trace = {lo, hi};
    if (lo.side == hi.side || lo.side == 0 || hi.side == 0) throw NumericalError("decay manifold not bracketed");
    for (int it = 0; it < opt.max_iterations; ++it) {
        const Real mid = (lo.parameter + hi.parameter) / 2;
        if (mid == lo.parameter || mid == hi.parameter) break;
        const ShootTrial t = shoot_trial(sys, mid, opt);
        r.trace.push_back(t);
        if (t.side == 0) {
            lo = hi = t;
            break;
        }
        (t.side == lo.side ? lo : hi) = t;
    }
    r.parameter = (lo.parameter + hi.parameter) / 2;
    r.expansion = indicial_expand(sys, opt.order, r.parameter);
    const State start{r.expansion.a_at(opt.y0), r.expansion.b_at(opt.y0)};
    r.profile = integrate_ivp(sys, opt.y0, start, opt.y_report, opt.ivp, uniform_grid(opt.y0, opt.y_report, opt.sample_step));
    return r;
}

nlohmann::ordered_json ShootResult::log_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["parameter"] = static_cast<double>(parameter);
    j["free_orders"] = expansion.free_orders;
    nlohmann::ordered_json a = nlohmann::ordered_json::array(), b = nlohmann::ordered_json::array();
    for (Real x : expansion.a) a.push_back(static_cast<double>(x));
    for (Real x : expansion.b) b.push_back(static_cast<double>(x));
    j["series_a"] = a;
    j["series_b_from_order_minus_1"] = b;
    nlohmann::ordered_json tr = nlohmann::ordered_json::array();
    for (const auto& t : trace)
        tr.push_back({{"parameter", static_cast<double>(t.parameter)},
                      {"side", t.side},
                      {"y_stop", static_cast<double>(t.y_stop)},
                      {"blew_up", t.blew_up}});
    j["trace"] = tr;
    return j;
}

InvariantField field_from_shot(const ShootResult& r, std::string name) {
    const ScalarProfile as = r.profile.a_spline(), bs = r.profile.b_spline();
    const IndicialExpansion e = r.expansion;
    const Real y0 = r.profile.y.front(), y1 = r.profile.y.back();
    auto pick = [=](const ScalarProfile& s, bool is_b) -> ScalarProfile {
        return [=](Real y) -> Jet2<Real> {
            if (y < y0) {
                return jet2<Real>(
                    [&](const auto& t) {
                        using T = std::decay_t<decltype(t)>;
                        T s(0);
                        for (int k = e.order; k >= 0; --k) s = s * t + T(is_b ? e.b[k + 1] : e.a[k]);
                        return is_b ? s + T(e.b[0]) / t : s;
                    },
                    y);
            }
            if (y > y1) return Jet2<Real>{};
            return s(y);
        };
    };
    return make_field(std::move(name), omega_multiple(pick(as, false)), omega_multiple(pick(bs, true)));
}

void write_profile_csv(std::ostream& out, const Profile& p) {
    out << "y,a,b\n" << std::setprecision(17);
    for (std::size_t i = 0; i < p.y.size(); ++i)
        out << static_cast<double>(p.y[i]) << ',' << static_cast<double>(p.a[i]) << ',' << static_cast<double>(p.b[i])
            << '\n';
}

}  // namespace kwlab
