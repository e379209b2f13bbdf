#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kwlab/invariant.hpp"

namespace kwlab {

/// Cubic interpolating spline with not-a-knot end conditions.
class CubicSpline {
public:
    CubicSpline() = default;
    /// Needs at least 4 strictly increasing abscissae.
    CubicSpline(std::vector<Real> x, std::vector<Real> y);

    Jet2<Real> operator()(Real t) const;
    Real lower() const { return x_.front(); }
    Real upper() const { return x_.back(); }

private:
    std::vector<Real> x_, y_, slope_;
};

/// Matrix-valued profile sampled on a grid; each entry splined separately.
struct SampledProfile {
    std::string name;
    std::vector<Real> y;
    std::vector<Mat3<Real>> values;

    MatrixProfile spline() const;
};

MatrixProfile sample_to_profile(const MatrixProfile& p, const std::vector<Real>& grid, std::string name,
                                SampledProfile* out = nullptr);

/// Profile CSV: each block starts with `# profile: NAME`, then the header
/// `y,c11,c12,c13,c21,c22,c23,c31,c32,c33` and one row per sample.
std::vector<SampledProfile> read_profiles_csv(std::istream& in);
void write_profiles_csv(std::ostream& out, const std::vector<SampledProfile>& profiles);

}  // namespace kwlab
