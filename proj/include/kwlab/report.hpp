#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace kwlab {

enum class Status { Pass, Fail, Info };
enum class Provenance { Published, Trivial, Derived };

/// One verified identity or bound.
struct CheckReport {
    std::string check_id;
    std::string statement;  // human-readable description of the checked statement
    double computed = 0;
    std::optional<double> expected;
    double tolerance = 0;
    Status status = Status::Info;
    Provenance provenance = Provenance::Derived;
    std::string note;
    std::map<std::string, double> detail;

    bool gating() const { return status != Status::Info; }
    bool passed() const { return status != Status::Fail; }

    /// Pass iff |computed - expected| <= tolerance.
    static CheckReport compare(std::string id, std::string ref, double computed, double expected, double tolerance,
                               Provenance prov);
    /// Pass iff the violation amount max(0, value - limit) is <= tolerance.
    static CheckReport at_most(std::string id, std::string ref, double value, double limit, double tolerance,
                               Provenance prov);
    /// Pass iff `ok`; computed is an informative measure of the outcome.
    static CheckReport boolean(std::string id, std::string ref, bool ok, double computed, Provenance prov);
    /// Never gates.
    static CheckReport info(std::string id, std::string ref, double computed, std::string note = {});

    /// Records a failure caused by an exception inside the check.
    static CheckReport failure(std::string id, std::string ref, const std::string& what);
};

std::string to_string(Status s);
std::string to_string(Provenance p);

nlohmann::ordered_json to_json(const CheckReport& r);
nlohmann::ordered_json to_json(const std::vector<CheckReport>& rs, const std::string& suite);

/// Writes text to path via a temporary file and rename. Throws IoError.
void write_atomic(const std::string& path, const std::string& text);

inline constexpr int kReportSchemaVersion = 1;

}  // namespace kwlab
