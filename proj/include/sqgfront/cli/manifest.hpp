#pragma once

// Run manifest written next to every command's output.

#include <chrono>
#include <string>
#include <vector>

#include "json.hpp"

namespace sqgfront::cli {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

/// measured <= tolerance, with NaN failing.
CheckResult make_check(std::string name, double measured, double tolerance,
                       std::string note = {});

std::string version_string();

class RunManifest {
 public:
  explicit RunManifest(std::string command);

  void set_config(nlohmann::json config) { config_ = std::move(config); }
  void add_check(CheckResult check) { checks_.push_back(std::move(check)); }
  /// Extra command-specific payload (diagnostics, file lists).
  nlohmann::json& data() { return data_; }

  const std::vector<CheckResult>& checks() const { return checks_; }
  bool all_passed() const;

  /// Stamps the wall time since construction.
  nlohmann::json to_json() const;
  void write(const std::string& path) const;

 private:
  std::string command_;
  nlohmann::json config_ = nlohmann::json::object();
  nlohmann::json data_ = nlohmann::json::object();
  std::vector<CheckResult> checks_;
  std::chrono::steady_clock::time_point start_;
  std::string started_at_;
};

/// Fixed-width table of checks for the terminal.
std::string format_checks(const std::vector<CheckResult>& checks);

}  // namespace sqgfront::cli
