#include "kwlab/spline.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "kwlab/error.hpp"

namespace kwlab {

CubicSpline::CubicSpline(std::vector<Real> x, std::vector<Real> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 4 || y_.size() != n) throw DomainError("spline needs at least 4 samples of matching length");
    std::vector<Real> dx(n - 1), sl(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        dx[i] = x_[i + 1] - x_[i];
        if (!(dx[i] > 0)) throw DomainError("spline abscissae must increase strictly");
        sl[i] = (y_[i + 1] - y_[i]) / dx[i];
    }
    // Tridiagonal system for the node slopes; first and last rows carry the
    // not-a-knot conditions (third derivative continuous at x1 and x_{n-2}).
    std::vector<Real> lo(n), di(n), up(n), rhs(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        lo[i] = dx[i];
        di[i] = 2 * (dx[i - 1] + dx[i]);
        up[i] = dx[i - 1];
        rhs[i] = 3 * (dx[i] * sl[i - 1] + dx[i - 1] * sl[i]);
    }
    const Real d0 = x_[2] - x_[0];
    di[0] = dx[1];
    up[0] = d0;
    rhs[0] = ((dx[0] + 2 * d0) * dx[1] * sl[0] + dx[0] * dx[0] * sl[1]) / d0;
    const Real dn = x_[n - 1] - x_[n - 3];
    di[n - 1] = dx[n - 3];
    lo[n - 1] = dn;
    rhs[n - 1] = (dx[n - 2] * dx[n - 2] * sl[n - 3] + (2 * dn + dx[n - 2]) * dx[n - 3] * sl[n - 2]) / dn;
    for (std::size_t i = 1; i < n; ++i) {
        const Real w = lo[i] / di[i - 1];
        di[i] -= w * up[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    slope_.assign(n, 0);
    slope_[n - 1] = rhs[n - 1] / di[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) slope_[i] = (rhs[i] - up[i] * slope_[i + 1]) / di[i];
}

Jet2<Real> CubicSpline::operator()(Real t) const {
    if (x_.empty()) throw DomainError("empty spline");
    if (t < x_.front() || t > x_.back()) throw DomainError("spline evaluated outside its sample range");
    std::size_t i = std::upper_bound(x_.begin(), x_.end(), t) - x_.begin();
    i = std::clamp<std::size_t>(i, 1, x_.size() - 1) - 1;
    const Real h = x_[i + 1] - x_[i];
    const Real s = (y_[i + 1] - y_[i]) / h;
    const Real c2 = (3 * s - 2 * slope_[i] - slope_[i + 1]) / h;
    const Real c3 = (slope_[i] + slope_[i + 1] - 2 * s) / (h * h);
    const Real u = t - x_[i];
    return {y_[i] + u * (slope_[i] + u * (c2 + u * c3)), slope_[i] + u * (2 * c2 + 3 * c3 * u), 2 * c2 + 6 * c3 * u};
}

MatrixProfile SampledProfile::spline() const {
    std::array<std::array<CubicSpline, 3>, 3> s;
    for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 3; ++a) {
            std::vector<Real> v(values.size());
            for (std::size_t k = 0; k < values.size(); ++k) v[k] = values[k][i][a];
            s[i][a] = CubicSpline(y, std::move(v));
        }
    return [s](Real t) {
        MatJet j;
        for (int i = 0; i < 3; ++i)
            for (int a = 0; a < 3; ++a) {
                const Jet2<Real> e = s[i][a](t);
                j.value[i][a] = e.value;
                j.d1[i][a] = e.d1;
                j.d2[i][a] = e.d2;
            }
        return j;
    };
}

MatrixProfile sample_to_profile(const MatrixProfile& p, const std::vector<Real>& grid, std::string name,
                                SampledProfile* out) {
    SampledProfile sp;
    sp.name = std::move(name);
    sp.y = grid;
    for (Real t : grid) sp.values.push_back(p(t).value);
    MatrixProfile r = sp.spline();
    if (out) *out = std::move(sp);
    return r;
}

namespace {
const char* kProfileHeader = "y,c11,c12,c13,c21,c22,c23,c31,c32,c33";
}

std::vector<SampledProfile> read_profiles_csv(std::istream& in) {
    std::vector<SampledProfile> out;
    std::string line;
    int lineno = 0;
    bool expect_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string tag = "# profile:";
        if (line.rfind(tag, 0) == 0) {
            SampledProfile p;
            p.name = line.substr(tag.size());
            p.name.erase(0, p.name.find_first_not_of(' '));
            out.push_back(std::move(p));
            expect_header = true;
            continue;
        }
        if (line[0] == '#') continue;
        if (expect_header) {
            if (line != kProfileHeader) throw UsageError("profile csv line " + std::to_string(lineno) + ": bad header");
            expect_header = false;
            continue;
        }
        if (out.empty()) throw UsageError("profile csv line " + std::to_string(lineno) + ": data before '# profile:'");
        std::istringstream ss(line);
        Real y = 0;
        Mat3<Real> m{};
        char comma = 0;
        bool ok = static_cast<bool>(ss >> y);
        for (int k = 0; k < 9 && ok; ++k) ok = (ss >> comma) && comma == ',' && (ss >> m[k / 3][k % 3]);
        if (!ok) throw UsageError("profile csv line " + std::to_string(lineno) + ": expected 10 numbers");
        out.back().y.push_back(y);
        out.back().values.push_back(m);
    }
    return out;
}

void write_profiles_csv(std::ostream& out, const std::vector<SampledProfile>& profiles) {
    out.precision(21);
    for (const auto& p : profiles) {
        out << "# profile: " << p.name << '\n' << kProfileHeader << '\n';
        for (std::size_t k = 0; k < p.y.size(); ++k) {
            out << p.y[k];
            for (int i = 0; i < 3; ++i)
                for (int a = 0; a < 3; ++a) out << ',' << p.values[k][i][a];
            out << '\n';
        }
    }
}

}  // namespace kwlab
