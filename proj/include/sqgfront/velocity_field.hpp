#pragma once

// Velocity of the front solution with the far-field normalization
// u -> (2 log|y|, 0), and the front normal velocity from both derivations.
// Line grids only; beyond the grid the front is flat at its end values.
// The reference point of the kernel difference is (0, -h).

#include <span>
#include <vector>

#include "sqgfront/grid_spectral.hpp"
#include "sqgfront/singular_quadrature.hpp"

namespace sqgfront {

struct GalileanShift {
  double ubar = 0.0;
  double vbar = 0.0;
  double h = 1.0;
};

struct VelocitySample {
  double x = 0.0;
  double y = 0.0;
  double u = 0.0;
  double v = 0.0;
};

GalileanShift galilean_shift(const FrontState& state, double h);
GalileanShift galilean_shift(const FrontState& state,
                             std::span<const double> phix, double h);

/// Throws InvalidArgument if (x, y) lies within one grid spacing of the front.
VelocitySample velocity_at(const FrontState& state, double x, double y,
                           const GalileanShift& shift);
VelocitySample velocity_at(const FrontState& state,
                           std::span<const double> phix, double x, double y,
                           const GalileanShift& shift);

/// I* - 2 log(phi + h) phi_x.
std::vector<double> normal_velocity_I(const FrontState& state,
                                      std::span<const double> phix, double h);
std::vector<double> normal_velocity_I(const FrontState& state, double h);

/// J + phi_x ubar - vbar.
std::vector<double> normal_velocity_II(const FrontState& state,
                                       std::span<const double> phix,
                                       const GalileanShift& shift);
std::vector<double> normal_velocity_II(const FrontState& state,
                                       const GalileanShift& shift);

/// The integral J alone (the last two terms of normal_velocity_II removed).
std::vector<double> j_integral(const FrontState& state,
                               std::span<const double> phix, double h);

/// Periodic 2D box for the Riesz-transform cross-check. The box is centered
/// at x = 0 and at the middle of the strip -h < y < max phi.
struct BoxSpec {
  double length = 64.0;
  int n = 1024;
  /// Probe line height above max phi.
  double probe_offset = 4.0;
  /// Probes cover |x| <= probe_span.
  double probe_span = 8.0;
  /// Standard deviation of the erf smoothing of the strip edges, in cells.
  double smoothing_cells = 1.0;
};

struct BoxReport {
  double mismatch = 0.0;  // max over probes of |u* - u*_box| and |v - v_box|
  double probe_y = 0.0;
  int probes = 0;
};

/// Builds theta* = -2 pi on -h < y < phi(x) on the box, applies the
/// multiplier form of the perpendicular Riesz transform with a 2D DFT and
/// compares with velocity_at minus the background (2 log|y + h|, 0).
BoxReport box_riesz_crosscheck(const FrontState& state, double h,
                               const BoxSpec& box);

}  // namespace sqgfront
