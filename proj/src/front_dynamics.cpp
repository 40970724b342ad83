#include "sqgfront/front_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sqgfront/constants.hpp"
#include "sqgfront/errors.hpp"

namespace sqgfront {

namespace {

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
  for (std::size_t j = 0; j < y.size(); ++j) y[j] += a * x[j];
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::string_view backend_name(Backend backend) {
  return backend == Backend::periodic_spectral ? "periodic" : "line";
}

Backend parse_backend(std::string_view name) {
  if (name == "line" || name == "line_quadrature") return Backend::line_quadrature;
  if (name == "periodic" || name == "periodic_spectral") {
    return Backend::periodic_spectral;
  }
  throw InvalidArgument("unknown backend '" + std::string(name) +
                        "' (expected line or periodic)");
}

LineGrid config_grid(const SimConfig& cfg) {
  return make_grid(cfg.x_min, cfg.length, cfg.n,
                   cfg.backend == Backend::periodic_spectral);
}

double linear_frequency(double xi) {
  if (xi == 0.0) return 0.0;
  return kAdvectionSpeed * xi - 2.0 * xi * std::log(std::abs(xi));
}

double linear_phase_speed(double xi) {
  if (xi == 0.0) throw InvalidArgument("linear_phase_speed: xi = 0");
  return kAdvectionSpeed - 2.0 * std::log(std::abs(xi));
}

double cfl_timestep(const LineGrid& grid, double safety) {
  if (!(safety > 0.0) || !std::isfinite(safety)) {
    throw InvalidArgument("cfl_timestep: safety factor must be positive");
  }
  double peak = 0.0;
  for (int k = 1; k <= grid.n / 2; ++k) {
    const double xi = 2.0 * kPi * k / grid.length();
    peak = std::max(peak, std::abs(linear_symbol(xi)));
  }
  if (!(peak > 0.0)) {
    throw InvalidArgument("cfl_timestep: grid resolves no dispersive mode");
  }
  return safety / peak;
}

FrontModel::FrontModel(const LineGrid& grid, const SimConfig& cfg)
    : grid_(grid), cfg_(cfg) {
  const bool periodic = cfg.backend == Backend::periodic_spectral;
  if (grid.periodic != periodic) {
    throw InvalidArgument("backend " + std::string(backend_name(cfg.backend)) +
                          " does not match the grid type");
  }
  if (periodic) {
    ws_.emplace(grid);
    const auto lin = ws_->lin_multiplier();
    const auto der = ws_->derivative_multiplier();
    full_linear_.resize(lin.size());
    for (std::size_t k = 0; k < lin.size(); ++k) {
      full_linear_[k] = lin[k] - kAdvectionSpeed * der[k];
    }
  } else {
    effective_lambda(cfg.kernel, grid);
    cosine_constant_ = cosine_integral_constant();
  }
}

void FrontModel::check(const FrontState& state) const {
  validate_state(state);
  if (state.grid.n != grid_.n || state.grid.dx != grid_.dx ||
      state.grid.periodic != grid_.periodic) {
    throw InvalidArgument("front state does not live on the model grid");
  }
}

KernelParams FrontModel::kernel_for(const FrontState& state) const {
  KernelParams k = cfg_.kernel;
  if (!(k.h > 0.0)) k.h = default_depth(state.phi);
  return k;
}

std::vector<double> FrontModel::slope(const FrontState& state) const {
  check(state);
  if (ws_) return spectral_derivative(state, *ws_);
  return finite_difference_derivative(state, LineEnds::flat);
}

std::vector<double> FrontModel::rhs(const FrontState& state) const {
  const auto q = slope(state);
  const auto kernel = kernel_for(state);
  std::vector<double> out;
  if (ws_) {
    out = ws_->apply(state.phi, full_linear_);
  } else {
    out = i2_linear_quadrature(state, q, kernel);
  }
  if (cfg_.nonlinear) axpy(out, 1.0, i1_nonlinear(state, q, kernel));
  if (ws_ && cfg_.dealias) out = dealias(out, *ws_);
  return out;
}

std::vector<double> FrontModel::rhs_galilean_form(const FrontState& state) const {
  const auto q = slope(state);
  const auto kernel = kernel_for(state);
  std::vector<double> out;
  if (ws_) {
    out = apply_linear_multiplier(state, *ws_);
  } else {
    // I2 carries 2 (gamma - log 2) phi_x on top of 2 log|d/dx| phi_x.
    out = i2_linear_quadrature(state, q, kernel);
    axpy(out, -2.0 * cosine_constant_, q);
  }
  axpy(out, -kAdvectionSpeed, q);
  if (cfg_.nonlinear) {
    // I1 is minus the kernel-difference integral.
    axpy(out, 1.0, i1_nonlinear(state, q, kernel));
  }
  if (ws_ && cfg_.dealias) out = dealias(out, *ws_);
  return out;
}

std::vector<double> FrontModel::velocity(const FrontState& state) const {
  return cfg_.galilean_form ? rhs_galilean_form(state) : rhs(state);
}

FrontState FrontModel::step_rk4(const FrontState& state, double dt) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InvalidArgument("step_rk4: dt must be positive");
  }
  auto stage = [&](const std::vector<double>& k, double a) {
    FrontState s{state.grid, state.phi, state.t + a * dt};
    axpy(s.phi, a * dt, k);
    for (double v : s.phi) {
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "step_rk4: non-finite stage value at t = " << s.t;
        throw NumericalError(msg.str());
      }
    }
    return s;
  };
  const auto k1 = velocity(state);
  const auto k2 = velocity(stage(k1, 0.5));
  const auto k3 = velocity(stage(k2, 0.5));
  const auto k4 = velocity(stage(k3, 1.0));
  FrontState next{state.grid, state.phi, state.t + dt};
  for (std::size_t j = 0; j < next.phi.size(); ++j) {
    next.phi[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    if (!std::isfinite(next.phi[j])) {
      std::ostringstream msg;
      msg << "step_rk4: non-finite phi at x = " << state.grid.x(static_cast<int>(j))
          << ", t = " << next.t;
      throw NumericalError(msg.str());
    }
  }
  return next;
}

std::vector<double> rhs(const FrontState& state, const SimConfig& cfg) {
  return FrontModel(state.grid, cfg).rhs(state);
}

std::vector<double> rhs_galilean_form(const FrontState& state,
                                      const SimConfig& cfg) {
  return FrontModel(state.grid, cfg).rhs_galilean_form(state);
}

FrontState step_rk4(const FrontState& state, double dt, const SimConfig& cfg) {
  return FrontModel(state.grid, cfg).step_rk4(state, dt);
}

StepPlan plan_steps(const SimConfig& cfg, const LineGrid& grid) {
  if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) {
    throw InvalidArgument("t_end must be positive");
  }
  if (cfg.dt < 0.0 || !std::isfinite(cfg.dt)) {
    throw InvalidArgument("dt must be non-negative (0 selects the CFL step)");
  }
  const double cfl = cfl_timestep(grid, cfg.cfl_safety);
  double dt = cfg.dt > 0.0 ? cfg.dt : cfl;
  if (cfg.backend == Backend::periodic_spectral && dt > cfl_timestep(grid)) {
    std::ostringstream msg;
    msg << "dt = " << dt << " exceeds the periodic stability bound "
        << cfl_timestep(grid);
    throw InvalidArgument(msg.str());
  }
  if (dt > cfg.t_end) throw InvalidArgument("t_end must be at least dt");
  const int steps = static_cast<int>(std::ceil(cfg.t_end / dt - 1e-9));
  return {cfg.t_end / steps, steps};
}

Diagnostics diagnose(const FrontModel& model, const FrontState& state) {
  Diagnostics d;
  d.t = state.t;
  double sum = 0.0;
  double sq = 0.0;
  for (double v : state.phi) {
    sum += v;
    sq += v * v;
  }
  d.mean = sum / static_cast<double>(state.phi.size());
  d.l2 = std::sqrt(sq * state.grid.dx);
  const auto q = model.slope(state);
  d.max_slope = max_abs(q);
  d.max_i3 = std::nan("");
  if (model.config().audit_i3 && !state.grid.periodic) {
    KernelParams k = model.config().kernel;
    if (!(k.h > 0.0)) k.h = default_depth(state.phi);
    d.max_i3 = max_abs(i3_term(state, q, k));
  }
  return d;
}

Trajectory integrate(const FrontModel& model, FrontState initial,
                     StepPlan plan) {
  const int stride = std::max(1, model.config().output_stride);
  Trajectory traj;
  traj.dt = plan.dt;
  traj.steps = plan.steps;
  const double t0 = initial.t;
  FrontState state = std::move(initial);
  traj.snapshots.push_back(state);
  traj.diagnostics.push_back(diagnose(model, state));
  for (int s = 1; s <= plan.steps; ++s) {
    try {
      state = model.step_rk4(state, plan.dt);
    } catch (const Error& e) {
      // Non-finite values, or a line-grid slope that no longer decays at the
      // ends (the flat far-field model has stopped applying).
      traj.aborted = true;
      traj.abort_reason = e.what();
      break;
    }
    state.t = t0 + s * plan.dt;
    const auto diag = diagnose(model, state);
    traj.diagnostics.push_back(diag);
    const bool steep = diag.max_slope > model.config().slope_limit;
    if (s % stride == 0 || s == plan.steps || steep) {
      traj.snapshots.push_back(state);
    }
    if (steep) {
      std::ostringstream msg;
      msg << "max|phi_x| = " << diag.max_slope << " exceeds the slope limit "
          << model.config().slope_limit << " at t = " << state.t;
      traj.aborted = true;
      traj.abort_reason = msg.str();
      break;
    }
  }
  return traj;
}

PreparedRun prepare_run(const SimConfig& cfg) {
  const LineGrid grid = config_grid(cfg);
  FrontState state = make_state(cfg.initial, grid);
  if (!grid.periodic) validate_line_support(state);
  SimConfig resolved = cfg;
  if (!(resolved.kernel.h > 0.0)) resolved.kernel.h = default_depth(state.phi);
  require_depth(state, resolved.kernel.h);
  FrontModel model(grid, resolved);
  const StepPlan plan = plan_steps(resolved, grid);
  return {std::move(model), std::move(state), plan};
}

Trajectory integrate(const SimConfig& cfg) {
  PreparedRun run = prepare_run(cfg);
  return integrate(run.model, std::move(run.state), run.plan);
}

double scaling_galilean_check(const SimConfig& cfg, double k,
                              int step_multiplier) {
  if (!(k >= 0.5 && k <= 2.0)) {
    throw InvalidArgument("scaling_galilean_check: k must lie in [1/2, 2]");
  }
  if (step_multiplier < 1) {
    throw InvalidArgument("scaling_galilean_check: step multiplier must be >= 1");
  }
  if (!(cfg.t_end > 0.0)) throw InvalidArgument("t_end must be positive");
  const LineGrid base_grid = config_grid(cfg);
  SimConfig scaled_cfg = cfg;
  scaled_cfg.x_min = k * cfg.x_min;
  scaled_cfg.length = k * cfg.length;
  scaled_cfg.t_end = k * cfg.t_end;
  scaled_cfg.kernel.h = k * cfg.kernel.h;
  scaled_cfg.kernel.lambda = k * cfg.kernel.lambda;
  if (cfg.dt > 0.0) scaled_cfg.dt = k * cfg.dt;
  const LineGrid scaled_grid = config_grid(scaled_cfg);

  FrontState base = make_state(cfg.initial, base_grid);
  FrontState scaled{scaled_grid, base.phi, 0.0};
  for (double& v : scaled.phi) v *= k;

  const double shift_total = 2.0 * std::log(k) * cfg.t_end;
  if (!base_grid.periodic) {
    validate_line_support(base);
    if (std::abs(shift_total) > 0.25 * base_grid.length()) {
      throw InvalidArgument(
          "scaling_galilean_check: the transformed front leaves the grid");
    }
  }

  const StepPlan p1 = plan_steps(cfg, base_grid);
  const StepPlan p2 = plan_steps(scaled_cfg, scaled_grid);
  const int steps = std::max(p1.steps, p2.steps) * step_multiplier;
  const FrontModel base_model(base_grid, cfg);
  const FrontModel scaled_model(scaled_grid, scaled_cfg);
  const double dt = cfg.t_end / steps;
  const double dT = scaled_cfg.t_end / steps;

  double mismatch = 0.0;
  for (int s = 1; s <= steps; ++s) {
    base = base_model.step_rk4(base, dt);
    scaled = scaled_model.step_rk4(scaled, dT);
    base.t = s * dt;
    if (s % std::max(1, cfg.output_stride) != 0 && s != steps) continue;
    if (k == 1.0) {
      for (int j = 0; j < base_grid.n; ++j) {
        mismatch = std::max(mismatch, std::abs(scaled.phi[j] - base.phi[j]));
      }
      continue;
    }
    const double shift = 2.0 * std::log(k) * base.t;
    std::vector<double> image;
    if (base_grid.periodic) {
      image = spectral_shift(base, shift);
    } else {
      image.resize(base_grid.n);
      for (int j = 0; j < base_grid.n; ++j) {
        image[j] = interpolate(base, base_grid.x(j) - shift);
      }
    }
    for (int j = 0; j < base_grid.n; ++j) {
      mismatch = std::max(mismatch, std::abs(scaled.phi[j] - k * image[j]));
    }
  }
  return mismatch;
}

}  // namespace sqgfront
