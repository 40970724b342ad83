#pragma once

// Subcommands of the sqgfront tool. Each returns the process exit status:
// 0 all checks pass, 1 a numerical check failed, 2 usage or config error.

#include <optional>
#include <string>

namespace sqgfront::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct CommandOptions {
  std::string config_path;  // empty: built-in defaults
  std::string out_dir = "out";
  std::string suite;
  std::optional<int> n;
  std::optional<double> dt;
  std::optional<std::string> backend;
  double tolerance_scale = 1.0;
};

int cmd_simulate(const CommandOptions& opts);
int cmd_verify(const CommandOptions& opts);
int cmd_dispersion(const CommandOptions& opts);
int cmd_velocity_map(const CommandOptions& opts);
int cmd_symmetry(const CommandOptions& opts);

}  // namespace sqgfront::cli
