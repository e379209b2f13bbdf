#include "kwlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "kwlab/error.hpp"

namespace kwlab {

CheckReport CheckReport::compare(std::string id, std::string ref, double computed, double expected, double tolerance,
                                 Provenance prov) {
    CheckReport r;
    r.check_id = std::move(id);
    r.statement = std::move(ref);
    r.computed = computed;
    r.expected = expected;
    r.tolerance = tolerance;
    r.provenance = prov;
    r.status = (std::isfinite(computed) && std::fabs(computed - expected) <= tolerance) ? Status::Pass : Status::Fail;
    return r;
}

CheckReport CheckReport::at_most(std::string id, std::string ref, double value, double limit, double tolerance,
                                 Provenance prov) {
    const double violation = std::isfinite(value) ? std::max(0.0, value - limit) : INFINITY;
    CheckReport r = compare(std::move(id), std::move(ref), violation, 0.0, tolerance, prov);
    r.detail["value"] = value;
    r.detail["limit"] = limit;
    return r;
}

CheckReport CheckReport::boolean(std::string id, std::string ref, bool ok, double computed, Provenance prov) {
    CheckReport r;
    r.check_id = std::move(id);
    r.statement = std::move(ref);
    r.computed = computed;
    r.provenance = prov;
    r.status = ok ? Status::Pass : Status::Fail;
    return r;
}

CheckReport CheckReport::info(std::string id, std::string ref, double computed, std::string note) {
    CheckReport r;
    r.check_id = std::move(id);
    r.statement = std::move(ref);
    r.computed = computed;
    r.status = Status::Info;
    r.note = std::move(note);
    return r;
}

CheckReport CheckReport::failure(std::string id, std::string ref, const std::string& what) {
    CheckReport r;
    r.check_id = std::move(id);
    r.statement = std::move(ref);
    r.computed = NAN;
    r.status = Status::Fail;
    r.note = "exception: " + what;
    return r;
}

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Info: return "info";
    }
    return "?";
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Published: return "published";
        case Provenance::Trivial: return "trivial";
        case Provenance::Derived: return "derived";
    }
    return "?";
}

namespace {
nlohmann::ordered_json number(double x) {
    if (std::isfinite(x)) return x;
    return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}
}  // namespace

nlohmann::ordered_json to_json(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["check_id"] = r.check_id;
    j["statement"] = r.statement;
    j["computed"] = number(r.computed);
    j["expected"] = r.expected ? number(*r.expected) : nlohmann::ordered_json(nullptr);
    j["tolerance"] = r.tolerance;
    j["status"] = to_string(r.status);
    j["provenance"] = to_string(r.provenance);
    if (!r.note.empty()) j["note"] = r.note;
    if (!r.detail.empty()) {
        nlohmann::ordered_json d = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.detail) d[k] = number(v);
        j["detail"] = d;
    }
    return j;
}

nlohmann::ordered_json to_json(const std::vector<CheckReport>& rs, const std::string& suite) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["suite"] = suite;
    std::size_t failed = 0;
    for (const auto& r : rs)
        if (!r.passed()) ++failed;
    j["checks_total"] = rs.size();
    j["checks_failed"] = failed;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rs) arr.push_back(to_json(r));
    j["checks"] = std::move(arr);
    return j;
}

void write_atomic(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    const fs::path tmp = fs::path(path + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << text;
        if (!out.flush()) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot rename onto " + target.string());
    }
}

}  // namespace kwlab
