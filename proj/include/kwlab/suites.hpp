#pragma once

// Named verification suites composing every module into CheckReport lists.

#include <cstdint>
#include <string>
#include <vector>

#include "kwlab/energy.hpp"
#include "kwlab/quadrature.hpp"
#include "kwlab/report.hpp"
#include "kwlab/tolerances.hpp"

namespace kwlab {

struct SuiteConfig {
    std::string suite = "all";
    std::uint64_t seed = 42;
    int decomp_samples = 10000;
    int perturbations = 100;
    int points = 1000;
    QuadratureSpec quad;
    IdentityOptions identities;
    Tolerances tol;
};

const std::vector<std::string>& suite_names();

std::vector<CheckReport> algebra_suite(const SuiteConfig& cfg);
std::vector<CheckReport> models_suite(const SuiteConfig& cfg);
std::vector<CheckReport> decomposition_checks(const SuiteConfig& cfg);
std::vector<CheckReport> energy_suite(const SuiteConfig& cfg);
std::vector<CheckReport> solver_suite(const SuiteConfig& cfg);

/// Runs the named suite (or all of them). Throws UsageError for unknown names.
std::vector<CheckReport> run_suite(const SuiteConfig& cfg);

/// True iff no gating check failed.
bool all_passed(const std::vector<CheckReport>& reports);

}  // namespace kwlab
