#pragma once

#include <map>
#include <string>
#include <vector>

namespace kwlab {

/// One registered check family. Reports use the family id itself or the
/// family id followed by a dotted suffix (e.g. `decomp.eigen.mu1`).
struct CheckSpec {
    std::string id;
    double tolerance;
    std::string suite;
};

const std::vector<CheckSpec>& check_registry();
bool is_registered(const std::string& id);

/// Per-check tolerances: registry defaults plus overrides.
class Tolerances {
public:
    /// Throws UsageError for unknown ids or non-positive values.
    void set(const std::string& id, double value);
    /// Tolerance of a check id, resolved through its family.
    double get(const std::string& id) const;
    const std::map<std::string, double>& overrides() const { return overrides_; }

private:
    std::map<std::string, double> overrides_;
};

}  // namespace kwlab
