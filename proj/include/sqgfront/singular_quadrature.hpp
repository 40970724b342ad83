#pragma once

// Singular and near-singular line integrals of the front equation.
//
// All x'-integrals run over a window |x - x'| <= lambda clipped to the grid.
// Beyond the window the front is taken to be flat at the value of the
// window's end node, where every integrand reduces to a difference of two
// shifted reciprocal square roots; those tails are added in closed form.
//
// Integrands of the form (phi_x(x) - phi_x(x')) / r(x, x') behave like
// sign(x - x') times a smooth function near the diagonal. The two one-sided
// limits cancel, so the diagonal node carries value zero, and the composite
// trapezoid is corrected with the odd-derivative Euler-Maclaurin terms
// (sixth order overall). The window ends use fourth-order Gregory weights.

#include <span>
#include <vector>

#include "sqgfront/grid_spectral.hpp"

namespace sqgfront {

enum class DiagonalMode {
  analytic_limit,  // two-sided limit plus endpoint corrections (default)
  skip_point,      // drop the x' = x node entirely, plain trapezoid
};

struct KernelParams {
  /// Reference depth; needs h + phi > 0 everywhere.
  double h = 1.0;
  /// Truncation radius. Zero selects the grid length, so every window spans
  /// the whole grid and the flat-tail assumption is exact.
  double lambda = 0.0;
  DiagonalMode diagonal_mode = DiagonalMode::analytic_limit;
};

/// 1 + 2 max(0, -min phi).
double default_depth(std::span<const double> phi);

/// Depth from default_depth, lambda = grid length.
KernelParams default_kernel_params(const FrontState& state);

/// Truncation radius actually used for a grid (resolves lambda = 0) and
/// validates it. Throws InvalidArgument if it exceeds the domain.
double effective_lambda(const KernelParams& params, const LineGrid& grid);

/// Throws InvalidArgument unless h + phi > 0 at every sample.
void require_depth(const FrontState& state, double h);

/// 1/|dx| - 1/sqrt(dx^2 + dphi^2), evaluated without cancellation.
double kernel_difference(double dx, double dphi);

/// Nonlinear term I1. Periodic grids integrate over the minimum image
/// (half a period on each side) without tails.
std::vector<double> i1_nonlinear(const FrontState& state,
                                 std::span<const double> phix,
                                 const KernelParams& params);

/// Linear term I2 by direct quadrature (line grids).
std::vector<double> i2_linear_quadrature(const FrontState& state,
                                         std::span<const double> phix,
                                         const KernelParams& params);

/// The background-flow remainder I3, which vanishes identically.
std::vector<double> i3_term(const FrontState& state,
                            std::span<const double> phix,
                            const KernelParams& params);

/// Quadrature of int_0^inf [1/sqrt(s^2+1) - 1/sqrt(s^2+c^2)] ds (= log c).
double scale_identity(double c);

/// Quadrature of int_0^inf [(1 - cos s)/s - 1/sqrt(s^2+1)] ds (= gamma - log 2).
/// The oscillatory integral is summed to the last multiple of 2 pi below
/// cutoff; the remainder is added from the cosine-integral asymptotics.
double cosine_integral_constant(double cutoff = 1e6);

/// Integrand of the cosine-integral constant, finite at s = 0.
double cosine_integrand(double s);

/// Sum over x' of the I1 integrand weighted by dx^2 and summed over every
/// grid point x (periodic minimum image, plain trapezoid weights). Vanishes
/// by antisymmetry of the integrand under x <-> x'.
double i1_double_sum(const FrontState& state, std::span<const double> phix);

}  // namespace sqgfront
