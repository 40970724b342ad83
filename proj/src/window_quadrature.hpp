#pragma once

// Shared machinery for windowed line integrals over grid nodes.

#include <algorithm>
#include <array>
#include <cmath>

#include "sqgfront/grid_spectral.hpp"
#include "sqgfront/singular_quadrature.hpp"

namespace sqgfront::detail {

/// Antiderivative of (s^2 + a^2)^(-1/2), i.e. log(s + sqrt(s^2 + a^2)).
/// For a = 0 it is log(2 s), valid for s > 0.
/// Written without asinh(s / a), which overflows for tiny a.
inline double inv_root_antiderivative(double s, double a) {
  const double r = std::sqrt(s * s + a * a);
  if (s >= 0.0) return std::log(s + r);
  // s + r cancels for s < 0; use (s + r)(r - s) = a^2.
  return 2.0 * std::log(a) - std::log(r - s);
}

/// int_{s1}^inf (s^2 + a1^2)^(-1/2) ds - int_{s2}^inf (s^2 + a2^2)^(-1/2) ds.
/// Each integral diverges; the difference does not.
inline double tail_difference(double s1, double a1, double s2, double a2) {
  return inv_root_antiderivative(s2, a2) - inv_root_antiderivative(s1, a1);
}

inline double inv_root(double s, double a) { return 1.0 / std::sqrt(s * s + a * a); }

/// Node range [lo, hi] of the window around target i.
struct Window {
  int lo = 0;
  int hi = 0;
};

inline Window window_around(const LineGrid& grid, int i, double lambda) {
  const int reach = static_cast<int>(std::floor(lambda / grid.dx + 1e-9));
  return {std::max(0, i - reach), std::min(grid.n - 1, i + reach)};
}

// Odd-derivative Euler-Maclaurin corrections at the diagonal, applied to
// sing(i + d) + sing(i - d) for d = 1, 2, 3.
inline constexpr std::array<double, 3> kDiagonalCorrection{
    373.0 / 2880.0, -1.0 / 36.0, 1.0 / 320.0};
// Gregory end weights (3/8, 7/6, 23/24) minus the trapezoid weight 1.
inline constexpr std::array<double, 3> kGregoryCorrection{-5.0 / 8.0, 1.0 / 6.0,
                                                          -1.0 / 24.0};

/// Composite quadrature over the window nodes, excluding tails. Returns the
/// weighted sum times dx. sing(j) is the part with a sign-type jump at the
/// target node i; smooth(j) is continuous there. Pass i < 0 when the target
/// is not a grid node (no diagonal treatment).
template <class Singular, class Smooth>
double window_sum(int i, Window w, double dx, DiagonalMode mode,
                  Singular&& sing, Smooth&& smooth) {
  const bool skip = (mode == DiagonalMode::skip_point);
  auto value = [&](int j) { return j == i ? smooth(j) : sing(j) + smooth(j); };

  double sum = 0.0;
  for (int j = w.lo; j <= w.hi; ++j) {
    if (j == i) {
      if (!skip) sum += smooth(j);
      continue;
    }
    sum += sing(j) + smooth(j);
  }

  if (skip) {
    if (w.lo != i) sum -= 0.5 * value(w.lo);
    if (w.hi != i) sum -= 0.5 * value(w.hi);
    return sum * dx;
  }

  const bool has_target = (i >= w.lo && i <= w.hi);
  if (has_target && i - w.lo >= 3 && w.hi - i >= 3) {
    for (int d = 1; d <= 3; ++d) {
      sum += kDiagonalCorrection[d - 1] * (sing(i + d) + sing(i - d));
    }
  }

  // Left end.
  const int left_len = has_target ? i - w.lo : w.hi - w.lo;
  if (left_len >= 6) {
    for (int m = 0; m < 3; ++m) sum += kGregoryCorrection[m] * value(w.lo + m);
  } else if (left_len >= 1) {
    sum -= 0.5 * value(w.lo);
  } else if (has_target) {
    sum -= 0.5 * smooth(i);
  }
  // Right end.
  const int right_len = has_target ? w.hi - i : w.hi - w.lo;
  if (right_len >= 6) {
    for (int m = 0; m < 3; ++m) sum += kGregoryCorrection[m] * value(w.hi - m);
  } else if (right_len >= 1) {
    sum -= 0.5 * value(w.hi);
  } else if (has_target) {
    sum -= 0.5 * smooth(i);
  }
  return sum * dx;
}

}  // namespace sqgfront::detail
