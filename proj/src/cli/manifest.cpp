#include "sqgfront/cli/manifest.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#ifndef SQGFRONT_VERSION
#define SQGFRONT_VERSION "unknown"
#endif

namespace sqgfront::cli {

using nlohmann::json;

namespace {

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

CheckResult make_check(std::string name, double measured, double tolerance,
                       std::string note) {
  const bool ok = std::isfinite(measured) && measured <= tolerance;
  return {std::move(name), measured, tolerance, ok, std::move(note)};
}

std::string version_string() { return std::string("sqgfront ") + SQGFRONT_VERSION; }

RunManifest::RunManifest(std::string command)
    : command_(std::move(command)),
      start_(std::chrono::steady_clock::now()),
      started_at_(utc_now()) {}

bool RunManifest::all_passed() const {
  for (const auto& c : checks_) {
    if (!c.passed) return false;
  }
  return true;
}

json RunManifest::to_json() const {
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  json checks = json::array();
  for (const auto& c : checks_) {
    json j{{"name", c.name}, {"tolerance", c.tolerance}, {"passed", c.passed}};
    // JSON has no NaN; a non-finite measurement is written as null.
    j["measured"] = std::isfinite(c.measured) ? json(c.measured) : json(nullptr);
    if (!c.note.empty()) j["note"] = c.note;
    checks.push_back(std::move(j));
  }
  return json{{"command", command_},  {"version", version_string()},
              {"started_at", started_at_}, {"wall_seconds", wall},
              {"config", config_},    {"checks", checks},
              {"all_passed", all_passed()}, {"data", data_}};
}

void RunManifest::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json().dump(2) << '\n';
}

std::string format_checks(const std::vector<CheckResult>& checks) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-44s %13s %13s  %s\n", "check", "measured",
                "tolerance", "result");
  os << line;
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-44s %13.4e %13.4e  %s\n", c.name.c_str(),
                  c.measured, c.tolerance, c.passed ? "pass" : "FAIL");
    os << line;
    if (!c.note.empty()) os << "    " << c.note << '\n';
  }
  return os.str();
}

}  // namespace sqgfront::cli
