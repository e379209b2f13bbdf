#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <doctest.h>

#include "kwlab/error.hpp"
#include "kwlab/suites.hpp"

using namespace kwlab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in, "cannot read " << path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<CheckReport> example_reports() {
    std::vector<CheckReport> rs;
    rs.push_back(CheckReport::compare("su2.example", "a compared value", 1.5, 1.25, 0.5, Provenance::Derived));
    rs.push_back(CheckReport::at_most("energy.ym_bound", "a bound", 3, 2, 0.5, Provenance::Published));
    rs.push_back(CheckReport::info("energy.ch_printed_sign", "informative", NAN, "not gating"));
    rs.push_back(CheckReport::boolean("calibrate", "a boolean", true, 1, Provenance::Trivial));
    return rs;
}

}  // namespace

TEST_SUITE("report") {
    TEST_CASE("status semantics") {
        CHECK(CheckReport::compare("x", "", 1, 1.1, 0.2, Provenance::Derived).passed());
        CHECK_FALSE(CheckReport::compare("x", "", 1, 1.5, 0.2, Provenance::Derived).passed());
        CHECK_FALSE(CheckReport::compare("x", "", NAN, 0, 1, Provenance::Derived).passed());
        CHECK(CheckReport::at_most("x", "", 0.5, 1, 0, Provenance::Derived).passed());
        CHECK_FALSE(CheckReport::at_most("x", "", 2, 1, 0.5, Provenance::Derived).passed());
        const CheckReport info = CheckReport::info("x", "", 1e9);
        CHECK(info.passed());
        CHECK_FALSE(info.gating());
        CHECK_FALSE(all_passed({CheckReport::failure("x", "", "boom")}));
    }

    TEST_CASE("JSON layout is locked by the golden file") {
        const std::string got = to_json(example_reports(), "example").dump(2) + "\n";
        CHECK(got == slurp(KWLAB_GOLDEN_DIR "/report_example.json"));
    }

    TEST_CASE("tolerance registry and overrides") {
        Tolerances t;
        CHECK(t.get("solver.ivp") == 1e-6);
        CHECK(t.get("square_bound.example.mu1") == t.get("square_bound"));
        t.set("energy.divergence", 0.5);
        CHECK(t.get("energy.divergence.volume") == 0.5);
        t.set("energy.divergence.cubic", 0.25);
        CHECK(t.get("energy.divergence.cubic") == 0.25);  // the most specific family wins
        CHECK(t.get("energy.divergence.volume") == 0.5);
        t.set("solver.ivp", 1e-3);
        CHECK(t.get("solver.ivp") == 1e-3);
        CHECK_THROWS_AS(t.set("nonsense", 1), UsageError);
        CHECK_THROWS_AS(t.set("solver.ivp", 0), UsageError);
        CHECK_THROWS_AS(t.set("solver.ivp", NAN), UsageError);
    }

    TEST_CASE("every emitted check id resolves through the registry") {
        SuiteConfig cfg;
        cfg.decomp_samples = 20;
        cfg.points = 50;
        cfg.perturbations = 2;
        std::set<std::string> ids;
        for (const char* s : {"algebra", "models", "decomposition", "solver"}) {
            cfg.suite = s;
            for (const auto& r : run_suite(cfg)) {
                CHECK_MESSAGE(ids.insert(r.check_id).second, "duplicate id " << r.check_id);
                if (r.gating()) CHECK_MESSAGE(is_registered(r.check_id), r.check_id);
            }
        }
    }

    TEST_CASE("unknown suites are usage errors") {
        SuiteConfig cfg;
        cfg.suite = "everything";
        CHECK_THROWS_AS(run_suite(cfg), UsageError);
        CHECK(suite_names().back() == "all");
    }

    TEST_CASE("atomic writes replace the target and report unwritable paths") {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / "kwlab-report-test";
        fs::create_directories(dir);
        const std::string path = (dir / "out.txt").string();
        write_atomic(path, "first\n");
        write_atomic(path, "second\n");
        CHECK(slurp(path) == "second\n");
        CHECK_FALSE(fs::exists(path + ".tmp"));
        CHECK_THROWS_AS(write_atomic("/proc/kwlab/nope.txt", "x"), IoError);
        fs::remove_all(dir);
    }
}
