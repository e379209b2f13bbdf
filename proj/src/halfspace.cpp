#include "kwlab/halfspace.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "kwlab/error.hpp"
#include "kwlab/kw.hpp"
#include "kwlab/random.hpp"

namespace kwlab {

namespace {

using D4 = Dual<Real, 4>;

struct DualCoeffs {
    std::array<Su2<D4>, 3> a;
    std::array<Su2<D4>, 3> phi;
};

std::array<D4, 4> variables(const HalfspacePoint& p) {
    return {D4::variable(p.x1, 0), D4::variable(p.x2, 1), D4::variable(p.x3, 2), D4::variable(p.y, 3)};
}

FlatValues unpack(const DualCoeffs& c) {
    FlatValues v;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            v.a[i][k] = c.a[i][k].v;
            v.phi[i][k] = c.phi[i][k].v;
            for (int mu = 0; mu < kGenerators; ++mu) {
                v.da[mu][i][k] = c.a[i][k].d[mu];
                v.dphi[mu][i][k] = c.phi[i][k].d[mu];
            }
        }
    return v;
}

void require_interior(const HalfspacePoint& p) {
    if (!(p.y > 0)) throw DomainError("boundary evaluation");
}

FormJet<Real> jet_of(const std::array<Su2<Real>, 3>& c, const std::array<std::array<Su2<Real>, 3>, kGenerators>& d) {
    FormJet<Real> j;
    for (int i = 0; i < 3; ++i) {
        j.value[blade(i)] = c[i];
        for (int mu = 0; mu < kGenerators; ++mu) j.partial[mu][blade(i)] = d[mu][i];
    }
    return j;
}

FlatResidual residual_with(const FlatValues& v, const HodgeSigns& signs) {
    const KwResidual<Real> k = kw_equations(jet_of(v.a, v.da), jet_of(v.phi, v.dphi), Coframe<Real>::flat(), signs);
    return {std::sqrt(norm_sq(k.first)), std::sqrt(norm_sq(k.second))};
}

HodgeSigns signs_for(int orientation) { return {orientation, orientation, orientation}; }

}  // namespace

Real HalfspacePoint::r() const { return std::sqrt(x1 * x1 + x2 * x2); }

FlatValues nahm_pole_eval(const HalfspacePoint& p) {
    require_interior(p);
    const auto x = variables(p);
    DualCoeffs c;
    const D4 inv = D4(1) / x[3];
    for (int i = 0; i < 3; ++i) c.phi[i] = inv * Su2<D4>::basis(i);
    return unpack(c);
}

namespace {
// handedness = +1 gives the solution; -1 reproduces the formula as printed,
// whose frame rotation about t3 turns against its connection.
FlatValues singular_model(const HalfspacePoint& p, int handedness) {
    require_interior(p);
    const auto x = variables(p);
    const D4 rho2 = x[0] * x[0] + x[1] * x[1] + x[3] * x[3];
    const D4 rho = sqrt(rho2);
    const Real h = handedness;
    const Su2<D4> t1 = Su2<D4>::basis(0), t2 = Su2<D4>::basis(1), t3 = Su2<D4>::basis(2);
    const std::array<Su2<D4>, 3> f = {
        (x[0] / rho) * t1 + (h * x[1] / rho) * t2,
        (x[0] / rho) * t2 - (h * x[1] / rho) * t1,
        (D4(1) + x[3] * x[3] / rho2) * t3,
    };
    DualCoeffs c;
    c.a[0] = (h * x[1] / rho2) * t3;
    c.a[1] = (-h * x[0] / rho2) * t3;
    for (int i = 0; i < 3; ++i) c.phi[i] = (D4(1) / x[3]) * f[i];
    return unpack(c);
}
}  // namespace

FlatValues nahm_singular_eval(const HalfspacePoint& p) { return singular_model(p, 1); }

FlatValues nahm_singular_printed_eval(const HalfspacePoint& p) { return singular_model(p, -1); }

FlatModelField nahm_pole_model() { return {"nahm-pole", nahm_pole_eval}; }

FlatModelField nahm_singular_model() { return {"nahm-singular", nahm_singular_eval}; }

FlatModelField nahm_singular_printed_model() { return {"nahm-singular-printed", nahm_singular_printed_eval}; }

FlatModelField perturbed_nahm_pole_model() {
    return {"nahm-pole-perturbed", [](const HalfspacePoint& p) {
                FlatValues v = nahm_pole_eval(p);
                v.phi[0][0] += p.y;
                v.dphi[kNormal][0][0] += 1;
                return v;
            }};
}

FlatModelField zero_flat_model() {
    return {"zero", [](const HalfspacePoint& p) {
                require_interior(p);
                return FlatValues{};
            }};
}

FlatModelField scale_pullback(const FlatModelField& field, Real s) {
    if (!(s > 0)) throw DomainError("scale must be positive");
    auto inner = field.eval;
    return {field.name + "/scaled", [inner, s](const HalfspacePoint& p) {
                FlatValues v = inner(p.scaled(s));
                for (int i = 0; i < 3; ++i) {
                    v.a[i] *= s;
                    v.phi[i] *= s;
                    for (int mu = 0; mu < kGenerators; ++mu) {
                        v.da[mu][i] *= s * s;
                        v.dphi[mu][i] *= s * s;
                    }
                }
                return v;
            }};
}

Real FlatResidual::combined() const { return std::sqrt(eq1 * eq1 + eq2 * eq2); }

int flat_orientation() {
    // Decided once by the Nahm pole model at a generic point.
    static const int orientation = [] {
        const FlatValues v = nahm_pole_eval({0.3L, -0.7L, 1.1L, 0.9L});
        const Real plus = residual_with(v, signs_for(1)).combined();
        const Real minus = residual_with(v, signs_for(-1)).combined();
        if (plus < 1e-14L && !(minus < 1e-14L)) return 1;
        if (minus < 1e-14L && !(plus < 1e-14L)) return -1;
        throw NumericalError("flat orientation not determined by the Nahm pole model");
    }();
    return orientation;
}

HodgeSigns flat_hodge() { return signs_for(flat_orientation()); }

FlatResidual kw_residual_flat_parts(const FlatValues& v) { return residual_with(v, flat_hodge()); }

FlatResidual kw_residual_flat_parts(const FlatModelField& field, const HalfspacePoint& p) {
    return kw_residual_flat_parts(field(p));
}

Real kw_residual_flat(const FlatModelField& field, const HalfspacePoint& p) {
    return kw_residual_flat_parts(field, p).combined();
}

std::vector<HalfspacePoint> sample_points(std::uint64_t seed, int n, Real extent, Real y_lo, Real y_hi, Real min_r) {
    Rng rng(seed);
    std::vector<HalfspacePoint> pts;
    pts.reserve(n);
    const Real l0 = std::log(y_lo), l1 = std::log(y_hi);
    while (static_cast<int>(pts.size()) < n) {
        HalfspacePoint p;
        p.x1 = rng.uniform(-extent, extent);
        p.x2 = rng.uniform(-extent, extent);
        p.x3 = rng.uniform(-extent, extent);
        p.y = std::exp(rng.uniform(l0, l1));
        if (p.r() >= min_r) pts.push_back(p);
    }
    return pts;
}

std::vector<HalfspacePoint> read_points_csv(std::istream& in) {
    std::vector<HalfspacePoint> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (lineno == 1 && line.rfind("x1", 0) == 0) continue;
        std::istringstream ss(line);
        std::array<Real, 4> v{};
        char comma = 0;
        for (int i = 0; i < 4; ++i) {
            if (i > 0 && !(ss >> comma && comma == ','))
                throw UsageError("points csv line " + std::to_string(lineno) + ": expected 4 comma-separated values");
            if (!(ss >> v[i])) throw UsageError("points csv line " + std::to_string(lineno) + ": bad number");
        }
        pts.push_back({v[0], v[1], v[2], v[3]});
    }
    return pts;
}

void write_residual_csv(std::ostream& out, const FlatModelField& field, const std::vector<HalfspacePoint>& pts) {
    out << "x1,x2,x3,y,res_eq1,res_eq2\n";
    out.precision(17);
    for (const auto& p : pts) {
        const FlatResidual r = kw_residual_flat_parts(field, p);
        out << static_cast<double>(p.x1) << ',' << static_cast<double>(p.x2) << ',' << static_cast<double>(p.x3)
            << ',' << static_cast<double>(p.y) << ',' << static_cast<double>(r.eq1) << ','
            << static_cast<double>(r.eq2) << '\n';
    }
}

}  // namespace kwlab
