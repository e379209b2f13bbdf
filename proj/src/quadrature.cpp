#include "kwlab/quadrature.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "kwlab/error.hpp"

namespace kwlab {

namespace {

template <unsigned N>
Integral gk_panel(const Integrand& f, Real a, Real b) {
    Real err = 0;
    const Real v = boost::math::quadrature::gauss_kronrod<Real, N>::integrate(f, a, b, 0, 0, &err);
    return {v, err};
}

Integral panel(const Integrand& f, Real a, Real b, int nodes) {
    switch (nodes) {
        case 15: return gk_panel<15>(f, a, b);
        case 21: return gk_panel<21>(f, a, b);
        case 31: return gk_panel<31>(f, a, b);
        case 41: return gk_panel<41>(f, a, b);
        case 51: return gk_panel<51>(f, a, b);
        case 61: return gk_panel<61>(f, a, b);
        default: throw DomainError("nodes_per_panel must be one of 15, 21, 31, 41, 51, 61");
    }
}

Integrand checked(const Integrand& f) {
    return [&f](Real y) {
        const Real v = f(y);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os.precision(17);
            os << "non-finite integrand at y = " << static_cast<double>(y);
            throw NumericalError(os.str());
        }
        return v;
    };
}

Integral panels(const Integrand& f, Real lo, Real hi, int n, int nodes, bool geometric) {
    Integral total;
    if (!(hi > lo)) return total;
    Real a = lo;
    for (int k = 1; k <= n; ++k) {
        const Real b = k == n ? hi
                       : geometric ? lo * std::pow(hi / lo, static_cast<Real>(k) / n)
                                   : lo + (hi - lo) * k / n;
        total += panel(f, a, b, nodes);
        a = b;
    }
    return total;
}

}  // namespace

std::string to_string(TailMode m) {
    return m == TailMode::TruncateBound ? "truncate" : "exp-sinh";
}

TailMode parse_tail_mode(const std::string& s) {
    if (s == "truncate") return TailMode::TruncateBound;
    if (s == "exp-sinh") return TailMode::ExponentialSubstitution;
    throw UsageError("unknown tail mode '" + s + "' (expected truncate or exp-sinh)");
}

void QuadratureSpec::validate() const {
    if (!(eps > 0 && eps < y_split && y_split < y_max))
        throw DomainError("quadrature needs 0 < eps < y_split < y_max");
    if (panels < 1) throw DomainError("quadrature needs at least one panel");
    if (!(tail_rate > 0)) throw DomainError("tail rate must be positive");
    switch (nodes_per_panel) {
        case 15: case 21: case 31: case 41: case 51: case 61: break;
        default: throw DomainError("nodes_per_panel must be one of 15, 21, 31, 41, 51, 61");
    }
}

QuadratureSpec QuadratureSpec::refined() const {
    QuadratureSpec s = *this;
    s.panels *= 2;
    return s;
}

Real sphere_volume() { return 2 * boost::math::constants::pi<Real>() * boost::math::constants::pi<Real>(); }

Integral integrate_range(const Integrand& f, Real lo, Real hi, const QuadratureSpec& spec) {
    const Integrand g = checked(f);
    return panels(g, lo, hi, spec.panels, spec.nodes_per_panel, lo > 0 && hi / lo > 4);
}

Integral integrate_halfline(const Integrand& f, Real lower, const QuadratureSpec& spec) {
    if (lower < 0) throw DomainError("negative lower limit");
    if (!(lower < spec.y_max)) throw DomainError("lower limit beyond y_max");
    const Integrand g = checked(f);
    Integral total;
    if (lower < spec.y_split) total += panels(g, lower, spec.y_split, spec.panels, spec.nodes_per_panel, lower > 0);
    const Real mid = std::max(lower, spec.y_split);
    total += panels(g, mid, spec.y_max, spec.panels, spec.nodes_per_panel, false);
    if (spec.tail_mode == TailMode::TruncateBound) {
        const Real lo = std::max(mid, spec.y_max - (spec.y_max - mid) / 2);
        const Real k = 1.5L * envelope_constant(g, spec.tail_rate, lo, spec.y_max, 64);
        total.error += k * std::exp(-spec.tail_rate * spec.y_max) / spec.tail_rate;
    } else {
        boost::math::quadrature::exp_sinh<Real> es;
        Real err = 0;
        const Real v = es.integrate([&](Real t) { return g(spec.y_max + t); }, std::sqrt(std::numeric_limits<Real>::epsilon()), &err);
        total.value += v;
        total.error += err;
    }
    return total;
}

Integral l2_norm_sq(const Integrand& density, const QuadratureSpec& spec, Real lower) {
    Integral i = integrate_halfline(density, lower, spec);
    const Real vol = sphere_volume();
    i.value *= vol;
    i.error *= vol;
    return i;
}

Real envelope_constant(const Integrand& f, Real rate, Real lo, Real hi, int n) {
    Real k = 0;
    for (int i = 0; i < n; ++i) {
        const Real y = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
        k = std::max(k, std::fabs(f(y)) * std::exp(rate * y));
    }
    return k;
}

}  // namespace kwlab
