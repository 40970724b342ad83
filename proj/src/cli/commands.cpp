#include "sqgfront/cli/commands.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sqgfront/cli/config.hpp"
#include "sqgfront/cli/manifest.hpp"
#include "sqgfront/cli/suites.hpp"
#include "sqgfront/constants.hpp"
#include "sqgfront/errors.hpp"
#include "sqgfront/front_dynamics.hpp"
#include "sqgfront/velocity_field.hpp"

namespace sqgfront::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Callers compute every row first, so a failure leaves no partial file.
void write_csv(const fs::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << header << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << num(row[i]);
    }
    out << '\n';
  }
}

void make_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
}

RunConfig load(const CommandOptions& opts) {
  RunConfig cfg = opts.config_path.empty() ? parse_config(json::object())
                                           : load_config(opts.config_path);
  if (opts.n) {
    if (*opts.n < 8 || !is_power_of_two(*opts.n)) {
      throw ConfigError("--n: must be a power of two >= 8");
    }
    cfg.sim.n = *opts.n;
    cfg.dispersion.n = *opts.n;
  }
  if (opts.dt) {
    if (!(*opts.dt > 0.0) || !std::isfinite(*opts.dt)) {
      throw ConfigError("--dt: must be positive");
    }
    cfg.sim.dt = *opts.dt;
  }
  if (opts.backend) {
    try {
      cfg.sim.backend = parse_backend(*opts.backend);
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("--backend: ") + e.what());
    }
  }
  if (!(opts.tolerance_scale > 0.0) || !std::isfinite(opts.tolerance_scale)) {
    throw ConfigError("--tolerance-scale: must be positive");
  }
  return cfg;
}

int finish(RunManifest& manifest, const std::string& out_dir) {
  manifest.write((fs::path(out_dir) / "manifest.json").string());
  if (!manifest.checks().empty()) std::cout << format_checks(manifest.checks());
  return manifest.all_passed() ? kExitOk : kExitCheckFailed;
}

json diagnostics_json(const Diagnostics& d) {
  json j{{"t", d.t}, {"mean", d.mean}, {"l2", d.l2}, {"max_slope", d.max_slope}};
  if (std::isfinite(d.max_i3)) j["max_i3"] = d.max_i3;
  return j;
}

// Runs body, mapping configuration and precondition errors to exit status 2.
template <class Body>
int guarded(const char* command, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << command << ": config error: " << e.what() << '\n';
  } catch (const InvalidArgument& e) {
    std::cerr << command << ": invalid input: " << e.what() << '\n';
  } catch (const NumericalError& e) {
    std::cerr << command << ": numerical failure: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << command << ": " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace

int cmd_simulate(const CommandOptions& opts) {
  return guarded("simulate", [&] {
    const RunConfig cfg = load(opts);
    PreparedRun run = prepare_run(cfg.sim);
    make_out_dir(opts.out_dir);

    RunManifest manifest("simulate");
    manifest.set_config(to_json(cfg));
    const double t0 = run.state.t;
    const Trajectory traj = integrate(run.model, std::move(run.state), run.plan);

    json files = json::array();
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
      const FrontState& s = traj.snapshots[i];
      const auto q = run.model.slope(s);
      std::vector<std::vector<double>> rows;
      rows.reserve(s.phi.size());
      for (int j = 0; j < s.grid.n; ++j) rows.push_back({s.grid.x(j), s.phi[j], q[j]});
      char name[32];
      std::snprintf(name, sizeof name, "snap_%05zu.csv", i);
      write_csv(fs::path(opts.out_dir) / name, "x,phi,phi_x", rows);
      files.push_back({{"file", name}, {"t", s.t}});
    }
    json diags = json::array();
    for (const auto& d : traj.diagnostics) diags.push_back(diagnostics_json(d));

    auto& data = manifest.data();
    data["dt"] = traj.dt;
    data["steps"] = traj.steps;
    data["t_start"] = t0;
    data["snapshots"] = files;
    data["diagnostics"] = diags;
    data["aborted"] = traj.aborted;
    if (traj.aborted) data["abort_reason"] = traj.abort_reason;
    manifest.add_check(make_check("simulate/completed", traj.aborted ? 1.0 : 0.0, 0.0,
                                  traj.abort_reason));
    std::cout << "simulate: " << traj.snapshots.size() << " snapshots, " << traj.steps
              << " steps of dt = " << num(traj.dt) << " in " << opts.out_dir << '\n';
    return finish(manifest, opts.out_dir);
  });
}

int cmd_verify(const CommandOptions& opts) {
  return guarded("verify", [&] {
    if (!(opts.tolerance_scale > 0.0) || !std::isfinite(opts.tolerance_scale)) {
      throw ConfigError("--tolerance-scale: must be positive");
    }
    std::vector<std::string> suites;
    if (opts.suite.empty()) throw ConfigError("--suite: required (or 'all')");
    if (opts.suite == "all") {
      suites = suite_names();
    } else {
      suites = {opts.suite};
    }
    SuiteOptions so{opts.tolerance_scale, opts.n};
    // Validate names before any work or output.
    for (const auto& s : suites) {
      const auto& names = suite_names();
      if (std::find(names.begin(), names.end(), s) == names.end()) {
        throw ConfigError("--suite: unknown suite '" + s + "'");
      }
    }
    make_out_dir(opts.out_dir);
    RunManifest manifest("verify");
    manifest.set_config({{"suites", suites},
                         {"tolerance_scale", opts.tolerance_scale},
                         {"n_override", opts.n ? json(*opts.n) : json(nullptr)},
                         {"tolerance_table", tolerance_table()}});
    for (const auto& s : suites) {
      for (auto& c : run_suite(s, so)) manifest.add_check(std::move(c));
    }
    return finish(manifest, opts.out_dir);
  });
}

int cmd_dispersion(const CommandOptions& opts) {
  return guarded("dispersion", [&] {
    const RunConfig cfg = load(opts);
    if (opts.backend && cfg.sim.backend != Backend::periodic_spectral) {
      throw ConfigError("--backend: dispersion runs on the periodic backend");
    }
    const DispersionSpec& d = cfg.dispersion;
    const int n = d.n;
    // On [0, 2 pi) the wavenumber equals the mode number.
    for (double xi : d.xi) {
      const double m = std::round(xi);
      if (std::abs(xi - m) > 1e-12 || m < 1.0 || 3.0 * m > n) {
        std::ostringstream msg;
        msg << "dispersion.xi: xi = " << xi << " is unresolved (need an integer mode in [1, "
            << n / 3 << "] on a 2 pi periodic grid with n = " << n << ")";
        throw ConfigError(msg.str());
      }
    }
    SimConfig sim = cfg.sim;
    sim.backend = Backend::periodic_spectral;
    sim.x_min = 0.0;
    sim.length = 2.0 * kPi;
    sim.n = n;
    sim.t_end = d.t_end;
    const LineGrid grid = config_grid(sim);
    const StepPlan plan = plan_steps(sim, grid);
    const FrontModel model(grid, sim);
    make_out_dir(opts.out_dir);

    RunManifest manifest("dispersion");
    manifest.set_config(to_json(cfg));
    std::vector<std::vector<double>> rows;
    for (double xi : d.xi) {
      FrontSpec mode;
      mode.family = FrontFamily::mode;
      mode.amplitude = d.amplitude;
      mode.wavenumber = xi;
      FrontState s = make_state(mode, grid);
      // a cos(xi x - omega t) projects onto exp(-i omega t) in mode xi.
      auto phase = [&](const FrontState& st) {
        std::complex<double> c{};
        for (int j = 0; j < n; ++j) c += st.phi[j] * std::polar(1.0, -xi * grid.x(j));
        return std::arg(c);
      };
      double last = phase(s);
      double unwrapped = 0.0;
      for (int k = 0; k < plan.steps; ++k) {
        s = model.step_rk4(s, plan.dt);
        const double p = phase(s);
        double delta = p - last;
        delta -= 2.0 * kPi * std::round(delta / (2.0 * kPi));
        unwrapped += delta;
        last = p;
      }
      const double t = plan.steps * plan.dt;
      const double measured = -unwrapped / t / xi;
      const double predicted = linear_phase_speed(xi);
      const double rel = std::abs(measured - predicted) / std::abs(predicted);
      rows.push_back({xi, predicted, measured, rel});
      manifest.add_check(make_check("dispersion/xi=" + num(xi), rel,
                                    1e-4 * opts.tolerance_scale));
    }
    write_csv(fs::path(opts.out_dir) / "dispersion.csv", "xi,predicted,measured,rel_error",
              rows);
    manifest.data()["dt"] = plan.dt;
    manifest.data()["steps"] = plan.steps;
    return finish(manifest, opts.out_dir);
  });
}

int cmd_velocity_map(const CommandOptions& opts) {
  return guarded("velocity-map", [&] {
    const RunConfig cfg = load(opts);
    if (cfg.sim.backend != Backend::line_quadrature) {
      throw ConfigError("grid.backend: the velocity field needs a line grid");
    }
    const LineGrid grid = config_grid(cfg.sim);
    const FrontState s = make_state(cfg.sim.initial, grid);
    validate_line_support(s);
    const double h = cfg.probes.h > 0.0 ? cfg.probes.h : default_depth(s.phi);
    const auto shift = galilean_shift(s, h);
    std::vector<std::vector<double>> rows;
    for (double y : cfg.probes.y) {
      if (y == 0.0) throw ConfigError("probes.y: y = 0 has no far-field residue (log 0)");
      for (double x : cfg.probes.x) {
        const auto v = velocity_at(s, x, y, shift);
        rows.push_back({x, y, v.u, v.v, v.u - 2.0 * std::log(std::abs(y))});
      }
    }
    make_out_dir(opts.out_dir);
    write_csv(fs::path(opts.out_dir) / "velocity_map.csv", "x,y,u,v,u_minus_2log_abs_y",
              rows);
    RunManifest manifest("velocity-map");
    manifest.set_config(to_json(cfg));
    manifest.data()["h"] = h;
    manifest.data()["ubar"] = shift.ubar;
    manifest.data()["vbar"] = shift.vbar;
    manifest.data()["rows"] = rows.size();
    return finish(manifest, opts.out_dir);
  });
}

int cmd_symmetry(const CommandOptions& opts) {
  return guarded("symmetry", [&] {
    const RunConfig cfg = load(opts);
    // Fails early on bad grids, data or time steps.
    prepare_run(cfg.sim);
    make_out_dir(opts.out_dir);
    RunManifest manifest("symmetry");
    manifest.set_config(to_json(cfg));
    const double tol = 1e-3 * opts.tolerance_scale;
    std::vector<std::vector<double>> rows;
    for (double k : cfg.symmetry.k) {
      double prev = NAN;
      for (int r : cfg.symmetry.refinements) {
        // Grid refinement: n times r, with the time step following (CFL or
        // the configured dt divided by r).
        SimConfig sim = cfg.sim;
        sim.n *= r;
        if (sim.dt > 0.0) sim.dt /= r;
        const double mismatch = scaling_galilean_check(sim, k);
        rows.push_back({k, static_cast<double>(sim.n), mismatch});
        const std::string tag = "scaling_galilean/k=" + num(k) + "/n=" + std::to_string(sim.n);
        if (std::isnan(prev)) {
          manifest.add_check(make_check(tag, mismatch, tol));
        } else {
          // Mismatch ratio against the previous level; must shrink.
          // k = 1 is exact at every level, so 0/0 counts as shrinking.
          const double ratio = prev > 0.0 ? mismatch / prev : (mismatch == 0.0 ? 0.0 : 1.0);
          manifest.add_check(make_check(tag + " ratio", ratio, 1.0 - 1e-12));
        }
        prev = mismatch;
      }
    }
    write_csv(fs::path(opts.out_dir) / "symmetry.csv", "k,n,mismatch", rows);
    return finish(manifest, opts.out_dir);
  });
}

}  // namespace sqgfront::cli
