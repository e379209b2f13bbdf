#include "kwlab/tolerances.hpp"

#include <cmath>
#include <stdexcept>

#include "kwlab/error.hpp"

namespace kwlab {

namespace {

// Exact checks compare rationals; their tolerance is never consulted but
// must still be positive.
constexpr double kExact = 1e-300;

}  // namespace

const std::vector<CheckSpec>& check_registry() {
    static const std::vector<CheckSpec> registry = {
        // algebra
        {"su2", kExact, "algebra"},
        {"su2.rotation", 1e-14, "algebra"},
        {"calibrate", 1e-10, "algebra"},
        {"ricci", 1e-15, "algebra"},
        {"invariant", 1e-14, "algebra"},
        {"curvature", 1e-12, "algebra"},
        {"residual", 1e-10, "algebra"},
        {"residual.rotation_covariance", 1e-12, "algebra"},
        {"residual.fd_structure", 1e-6, "algebra"},
        {"taubes", 1e-10, "algebra"},
        // models
        {"models.nahm_pole", 1e-12, "models"},
        {"models.nahm_singular", 1e-10, "models"},
        {"models.scale_invariance", 1e-13, "models"},
        {"models.residual_homogeneity", 1e-10, "models"},
        {"models.fd_perturbed", 1e-6, "models"},
        {"models.he_scaling_slope", 0.1, "models"},
        {"models.zero", 1e-12, "models"},
        {"models.rotation_covariance", 1e-12, "models"},
        // decomposition
        {"decomp", kExact, "decomposition"},
        {"decomp.eigen_commute", 1e-14, "decomposition"},
        {"star_table", kExact, "decomposition"},
        {"square_bound", kExact, "decomposition"},
        // energy
        {"energy.bulk_boundary", 1e-6, "energy"},
        {"energy.boundary_expansion", 1e-6, "energy"},
        {"energy.completed_square", 1e-6, "energy"},
        {"energy.c0_increments", 0.5, "energy"},
        {"energy.c0_routes", 1e-6, "energy"},
        {"energy.divergence", 0.05, "energy"},
        {"energy.ch_stability", 1e-8, "energy"},
        {"energy.ch_envelope", 1e-12, "energy"},
        {"energy.ch_identity", 1e-10, "energy"},
        {"energy.charge", 1e-8, "energy"},
        {"energy.ym_bound", 1e-12, "energy"},
        {"energy.ym_slack", 1e-6, "energy"},
        {"energy.ym_universal_bound", 1e-12, "energy"},
        {"energy.refined_bound", 1e-12, "energy"},
        {"energy.zero_curvature", 1e-12, "energy"},
        {"energy.integrating_factor", 1e-6, "energy"},
        {"energy.quadrature", 1e-10, "energy"},
        {"perturb", 1e-9, "energy"},
        {"perturb.v1_split", 1e-12, "energy"},
        {"perturb.pointwise", 1e-12, "energy"},
        // solver
        {"solver.derive", 1e-10, "solver"},
        {"solver.stationary", 1e-14, "solver"},
        {"solver.series", 1e-10, "solver"},
        {"solver.regularity", kExact, "solver"},
        {"solver.ivp", 1e-6, "solver"},
        {"solver.step_doubling", 1e-8, "solver"},
        {"solver.flow", 1e-8, "solver"},
        {"solver.shoot", 1e-4, "solver"},
        {"solver.decay_envelope", 1e-2, "solver"},
        {"solver.blowup", kExact, "solver"},
        {"solver.jacobian_eigen", 1e-8, "solver"},
        {"solver.shoot_energy", 1e-3, "solver"},
        {"solver.flat_endpoint", 1e-12, "solver"},
    };
    return registry;
}

namespace {

const CheckSpec* find_spec(const std::string& id) {
    for (const auto& s : check_registry())
        if (s.id == id) return &s;
    return nullptr;
}

/// id, then each dotted prefix of id, longest first.
std::vector<std::string> families(const std::string& id) {
    std::vector<std::string> out{id};
    std::string cur = id;
    for (auto pos = cur.rfind('.'); pos != std::string::npos; pos = cur.rfind('.')) {
        cur.resize(pos);
        out.push_back(cur);
    }
    return out;
}

}  // namespace

bool is_registered(const std::string& id) {
    for (const auto& f : families(id))
        if (find_spec(f)) return true;
    return false;
}

void Tolerances::set(const std::string& id, double value) {
    if (!is_registered(id)) throw UsageError("unknown check id '" + id + "'");
    if (!(value > 0) || !std::isfinite(value)) throw UsageError("tolerance for '" + id + "' must be positive");
    overrides_[id] = value;
}

double Tolerances::get(const std::string& id) const {
    for (const auto& f : families(id)) {
        auto it = overrides_.find(f);
        if (it != overrides_.end()) return it->second;
        if (const CheckSpec* s = find_spec(f)) return s->tolerance;
    }
    throw std::logic_error("check id without a registered family: " + id);
}

}  // namespace kwlab
