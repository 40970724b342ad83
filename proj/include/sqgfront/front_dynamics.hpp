#pragma once

// Right-hand side of the front equation, RK4 time stepping and the
// scaling-Galilean symmetry check.

#include <optional>
#include <string>
#include <vector>

#include "sqgfront/grid_spectral.hpp"
#include "sqgfront/initial_data.hpp"
#include "sqgfront/singular_quadrature.hpp"

namespace sqgfront {

enum class Backend { line_quadrature, periodic_spectral };

std::string_view backend_name(Backend backend);
/// Accepts "line", "line_quadrature", "periodic", "periodic_spectral".
Backend parse_backend(std::string_view name);

struct SimConfig {
  double x_min = -32.0;
  double length = 64.0;
  int n = 512;
  FrontSpec initial;
  Backend backend = Backend::line_quadrature;
  /// kernel.h <= 0 selects default_depth of the initial data.
  KernelParams kernel{0.0, 0.0, DiagonalMode::analytic_limit};
  /// dt <= 0 selects cfl_timestep(grid, cfl_safety).
  double dt = 0.0;
  double cfl_safety = 0.5;
  double t_end = 1.0;
  int output_stride = 10;
  /// Integrate with rhs_galilean_form instead of rhs.
  bool galilean_form = false;
  /// false drops I1 (linear dynamics only).
  bool nonlinear = true;
  /// Two-thirds dealiasing of the periodic right-hand side.
  bool dealias = false;
  /// Record max|I3| in the diagnostics (line backend).
  bool audit_i3 = false;
  double slope_limit = 100.0;
};

LineGrid config_grid(const SimConfig& cfg);

/// Linear dispersion relation: phi = a cos(xi x - omega t) solves the
/// linearized equation with omega = 2 (log 2 - gamma) xi - 2 xi log|xi|.
double linear_frequency(double xi);
double linear_phase_speed(double xi);

/// safety / max_k |m(xi_k)| over the grid wavenumbers (Nyquist included).
double cfl_timestep(const LineGrid& grid, double safety = 0.5);

/// Evaluates the right-hand side for one grid and configuration. Holds the
/// spectral tables for periodic grids.
class FrontModel {
 public:
  FrontModel(const LineGrid& grid, const SimConfig& cfg);

  const LineGrid& grid() const { return grid_; }
  const SimConfig& config() const { return cfg_; }

  /// phi_x: spectral on periodic grids, fourth-order differences on lines.
  std::vector<double> slope(const FrontState& state) const;
  /// I1 + I2.
  std::vector<double> rhs(const FrontState& state) const;
  /// 2 log|d/dx| phi_x - 2 (log 2 - gamma) phi_x - N, where N is the
  /// integral of (phi_x - phi_x') times the kernel difference.
  std::vector<double> rhs_galilean_form(const FrontState& state) const;
  /// rhs or rhs_galilean_form according to the configuration.
  std::vector<double> velocity(const FrontState& state) const;

  FrontState step_rk4(const FrontState& state, double dt) const;

 private:
  void check(const FrontState& state) const;
  KernelParams kernel_for(const FrontState& state) const;

  LineGrid grid_;
  SimConfig cfg_;
  std::optional<SpectralWorkspace> ws_;
  std::vector<Complex> full_linear_;  // m(xi) + 2 (gamma - log 2) i xi
  double cosine_constant_ = 0.0;
};

std::vector<double> rhs(const FrontState& state, const SimConfig& cfg);
std::vector<double> rhs_galilean_form(const FrontState& state,
                                      const SimConfig& cfg);
FrontState step_rk4(const FrontState& state, double dt, const SimConfig& cfg);

struct Diagnostics {
  double t = 0.0;
  double mean = 0.0;
  double l2 = 0.0;
  double max_slope = 0.0;
  /// NaN unless audited.
  double max_i3 = 0.0;
};

struct Trajectory {
  std::vector<FrontState> snapshots;
  std::vector<Diagnostics> diagnostics;
  double dt = 0.0;
  int steps = 0;
  bool aborted = false;
  std::string abort_reason;
};

/// Time step and step count actually used: dt adjusted down so that an
/// integer number of steps lands on t_end.
struct StepPlan {
  double dt = 0.0;
  int steps = 0;
};
StepPlan plan_steps(const SimConfig& cfg, const LineGrid& grid);

Diagnostics diagnose(const FrontModel& model, const FrontState& state);

/// Everything integrate(cfg) needs, validated up front: grid, initial
/// state (line support, depth) and step plan. Throws InvalidArgument.
struct PreparedRun {
  FrontModel model;
  FrontState state;
  StepPlan plan;
};
PreparedRun prepare_run(const SimConfig& cfg);

Trajectory integrate(const SimConfig& cfg);
/// Evolves a given state with a fixed step plan.
Trajectory integrate(const FrontModel& model, FrontState initial,
                     StepPlan plan);

/// Evolves phi0 and the transformed data k phi0(X / k) to times t and k t
/// and returns the sup-norm mismatch between the second run and the image
/// of the first under x -> k (x + 2 log(k) t), y -> k y. Both runs take the
/// same number of steps, step_multiplier times the CFL count.
double scaling_galilean_check(const SimConfig& cfg, double k,
                              int step_multiplier = 1);

}  // namespace sqgfront
