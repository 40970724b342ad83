#pragma once

// Verification suites run by `sqgfront verify`. Resolutions and tolerances
// come from a versioned defaults table so runs are reproducible.

#include <optional>
#include <string>
#include <vector>

#include "sqgfront/cli/manifest.hpp"

namespace sqgfront::cli {

inline constexpr const char* kToleranceTableVersion = "2026-10.1";

struct SuiteOptions {
  /// Multiplies every tolerance.
  double tolerance_scale = 1.0;
  /// Replaces the table resolution of grid-based checks.
  std::optional<int> n;
};

const std::vector<std::string>& suite_names();

/// Throws ConfigError for an unknown suite.
std::vector<CheckResult> run_suite(const std::string& name,
                                   const SuiteOptions& options);

/// Table entries as JSON (name, tolerance, resolution) for the manifest.
nlohmann::json tolerance_table();

}  // namespace sqgfront::cli
