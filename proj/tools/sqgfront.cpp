// sqgfront: simulate and verify the SQG front equation.

#include <iostream>

#include "CLI11.hpp"
#include "sqgfront/cli/commands.hpp"
#include "sqgfront/cli/manifest.hpp"

namespace {

using sqgfront::cli::CommandOptions;

void add_common(CLI::App* sub, CommandOptions& opts, bool with_config = true) {
  if (with_config) {
    sub->add_option("--config", opts.config_path, "JSON run configuration");
  }
  sub->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
  sub->add_option("--n", opts.n, "grid points (power of two)");
  sub->add_option("--tolerance-scale", opts.tolerance_scale, "multiply every tolerance")
      ->capture_default_str();
}

void add_stepping(CLI::App* sub, CommandOptions& opts) {
  sub->add_option("--dt", opts.dt, "time step (default: CFL)");
  sub->add_option("--backend", opts.backend, "line or periodic");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contour dynamics of planar SQG fronts"};
  app.set_version_flag("--version", sqgfront::cli::version_string());
  app.require_subcommand(1);

  CommandOptions opts;
  auto* simulate = app.add_subcommand("simulate", "integrate a front and write snapshots");
  add_common(simulate, opts);
  add_stepping(simulate, opts);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, opts, false);
  verify->add_option("--suite", opts.suite,
                     "identities, equivalence, farfield, qg, symmetry or all")
      ->required();

  auto* dispersion = app.add_subcommand("dispersion", "measured vs predicted phase speed");
  add_common(dispersion, opts);
  add_stepping(dispersion, opts);

  auto* velocity = app.add_subcommand("velocity-map", "velocity at probe points");
  add_common(velocity, opts);
  velocity->add_option("--backend", opts.backend, "line (the only supported grid)");

  auto* symmetry = app.add_subcommand("symmetry", "scaling-Galilean symmetry check");
  add_common(symmetry, opts);
  add_stepping(symmetry, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sqgfront::cli::kExitUsage;
  }

  using namespace sqgfront::cli;
  if (simulate->parsed()) return cmd_simulate(opts);
  if (verify->parsed()) return cmd_verify(opts);
  if (dispersion->parsed()) return cmd_dispersion(opts);
  if (velocity->parsed()) return cmd_velocity_map(opts);
  return cmd_symmetry(opts);
}
