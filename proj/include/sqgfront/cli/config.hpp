#pragma once

// JSON run configuration for the command-line tool.
//
// Every section and key is optional; omitted values keep the SimConfig
// defaults. Unknown keys and wrong types are rejected with the dotted path of
// the offending field.
//
//   {
//     "grid":    {"x_min": -32, "length": 64, "n": 512, "backend": "line"},
//     "initial": {"family": "gaussian", "amplitude": 0.5, "width": 1,
//                 "center": 0, "offset": 0, "wavenumber": 1, "phase": 0,
//                 "plateau": 10, "taper": 10, "power": 6, "modes": 4,
//                 "seed": 1},
//     "kernel":  {"h": 0, "lambda": 0, "diagonal": "analytic_limit"},
//     "time":    {"dt": 0, "cfl_safety": 0.5, "t_end": 1,
//                 "output_stride": 10},
//     "options": {"galilean_form": false, "nonlinear": true,
//                 "dealias": false, "audit_i3": false, "slope_limit": 100},
//     "probes":  {"x": [0], "y": [10, 100, 1000], "h": 0},
//     "dispersion": {"xi": [1, 2, 4], "amplitude": 1e-4, "n": 1024,
//                    "t_end": 0.05},
//     "symmetry": {"k": [0.5, 2], "refinements": [1, 2]}
//   }

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "sqgfront/front_dynamics.hpp"

namespace sqgfront::cli {

/// Malformed or inconsistent configuration (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProbeGrid {
  std::vector<double> x{0.0};
  std::vector<double> y{10.0, 100.0, 1000.0};
  /// Reference depth; <= 0 selects default_depth of the front.
  double h = 0.0;
};

struct DispersionSpec {
  std::vector<double> xi{1.0, 2.0, 4.0};
  double amplitude = 1e-4;
  int n = 1024;
  double t_end = 0.05;
};

struct SymmetrySpec {
  std::vector<double> k{0.5, 2.0};
  /// Grid refinement factors applied to grid.n.
  std::vector<int> refinements{1, 2};
};

struct RunConfig {
  SimConfig sim;
  ProbeGrid probes;
  DispersionSpec dispersion;
  SymmetrySpec symmetry;
};

RunConfig parse_config(const nlohmann::json& doc);
/// Reads and parses a file; I/O and JSON syntax errors become ConfigError.
RunConfig load_config(const std::string& path);

/// Full echo of the effective configuration, defaults included.
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace sqgfront::cli
