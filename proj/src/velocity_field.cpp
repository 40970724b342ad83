#include "sqgfront/velocity_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fft.hpp"
#include "sqgfront/constants.hpp"
#include "sqgfront/errors.hpp"
#include "window_quadrature.hpp"

namespace sqgfront {

namespace {

using detail::inv_root;
using detail::tail_difference;

void check_line(const FrontState& state, std::span<const double> phix,
                const char* what) {
  validate_state(state);
  if (state.grid.periodic) {
    throw InvalidArgument(std::string(what) + ": line grids only");
  }
  if (static_cast<int>(phix.size()) != state.grid.n) {
    throw InvalidArgument(std::string(what) + ": phi_x has the wrong length");
  }
  for (double q : phix) {
    if (!std::isfinite(q)) {
      throw InvalidArgument(std::string(what) + ": non-finite phi_x");
    }
  }
}

detail::Window whole(const LineGrid& g) { return {0, g.n - 1}; }

double end_gap(const LineGrid& g, int from, int to) {
  return std::max(std::abs(to - from) * g.dx, 0.5 * g.dx);
}

std::vector<double> line_slope(const FrontState& state) {
  if (state.grid.periodic) {
    throw InvalidArgument("velocity field: line grids only");
  }
  return finite_difference_derivative(state, LineEnds::flat);
}

}  // namespace

GalileanShift galilean_shift(const FrontState& state,
                             std::span<const double> phix, double h) {
  check_line(state, phix, "galilean_shift");
  require_depth(state, h);
  const LineGrid& g = state.grid;
  const auto& phi = state.phi;
  // Relative to the flat front at the left far-field height r the first
  // piece is 2 log(h + r) in closed form; the rest has compact support.
  const double r = phi.front();
  auto du = [&](int j) {
    return inv_root(g.x(j), h + r) - inv_root(g.x(j), h + phi[j]);
  };
  auto dv = [&](int j) { return phix[j] * inv_root(g.x(j), h + phi[j]); };
  auto zero = [](int) { return 0.0; };
  const double b = g.x(g.n - 1);
  double u = detail::window_sum(-1, whole(g), g.dx, DiagonalMode::analytic_limit,
                                zero, du);
  u += tail_difference(b, h + r, b, h + phi.back());
  u += 2.0 * std::log(h + r);
  const double v = detail::window_sum(-1, whole(g), g.dx,
                                      DiagonalMode::analytic_limit, zero, dv);
  return {-u, v, h};
}

GalileanShift galilean_shift(const FrontState& state, double h) {
  const auto q = line_slope(state);
  return galilean_shift(state, q, h);
}

VelocitySample velocity_at(const FrontState& state,
                           std::span<const double> phix, double x, double y,
                           const GalileanShift& shift) {
  check_line(state, phix, "velocity_at");
  require_depth(state, shift.h);
  const LineGrid& g = state.grid;
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw InvalidArgument("velocity_at: non-finite probe");
  }
  const double front = interpolate(state, x);
  if (std::abs(y - front) < g.dx) {
    std::ostringstream msg;
    msg << "velocity_at: probe (" << x << ", " << y
        << ") lies within one grid spacing of the front (phi = " << front
        << "); use the normal velocity on the front";
    throw InvalidArgument(msg.str());
  }
  const auto& phi = state.phi;
  const double h = shift.h;
  const double r = phi.front();
  const double yr = std::abs(y - r);
  if (!(yr > 0.0)) {
    throw InvalidArgument("velocity_at: probe at the far-field height of the front");
  }
  // Same split as ubar: the flat front at height r contributes
  // 2 log(h + r) - 2 log|y - r| in closed form.
  auto ku = [&](int j) {
    const double s = x - g.x(j);
    return inv_root(s, y - phi[j]) - inv_root(s, yr) + inv_root(g.x(j), h + r) -
           inv_root(g.x(j), h + phi[j]);
  };
  auto kv = [&](int j) {
    return (inv_root(x - g.x(j), y - phi[j]) - inv_root(g.x(j), h + phi[j])) * phix[j];
  };
  auto zero = [](int) { return 0.0; };
  const double b = g.x(g.n - 1);
  double iu = detail::window_sum(-1, whole(g), g.dx,
                                 DiagonalMode::analytic_limit, zero, ku);
  iu += tail_difference(b - x, std::abs(y - phi.back()), b - x, yr) +
        tail_difference(b, h + r, b, h + phi.back());
  iu += 2.0 * std::log(h + r) - 2.0 * std::log(yr);
  const double iv = detail::window_sum(-1, whole(g), g.dx,
                                       DiagonalMode::analytic_limit, zero, kv);
  return {x, y, -iu - shift.ubar, -iv - shift.vbar};
}

VelocitySample velocity_at(const FrontState& state, double x, double y,
                           const GalileanShift& shift) {
  const auto q = line_slope(state);
  return velocity_at(state, q, x, y, shift);
}

std::vector<double> normal_velocity_I(const FrontState& state,
                                      std::span<const double> phix, double h) {
  check_line(state, phix, "normal_velocity_I");
  require_depth(state, h);
  const LineGrid& g = state.grid;
  const auto& phi = state.phi;
  std::vector<double> out(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double p = g.x(i);
    const double qp = phix[i];
    const double c = h + phi[i];
    auto sing = [&](int j) {
      return (qp - phix[j]) * inv_root((i - j) * g.dx, phi[i] - phi[j]);
    };
    auto smooth = [&](int j) { return -qp * inv_root(g.x(j) - p, c); };
    double value = detail::window_sum(i, whole(g), g.dx,
                                      DiagonalMode::analytic_limit, sing, smooth);
    const double dl = end_gap(g, i, 0);
    const double dr = end_gap(g, i, g.n - 1);
    value += qp * (tail_difference(dl, std::abs(phi[i] - phi.front()), dl, c) +
                   tail_difference(dr, std::abs(phi[i] - phi.back()), dr, c));
    out[i] = value - 2.0 * std::log(c) * qp;
  }
  return out;
}

std::vector<double> normal_velocity_I(const FrontState& state, double h) {
  const auto q = line_slope(state);
  return normal_velocity_I(state, q, h);
}

std::vector<double> j_integral(const FrontState& state,
                               std::span<const double> phix, double h) {
  check_line(state, phix, "j_integral");
  require_depth(state, h);
  const LineGrid& g = state.grid;
  const auto& phi = state.phi;
  std::vector<double> background(g.n);
  for (int j = 0; j < g.n; ++j) background[j] = inv_root(g.x(j), h + phi[j]);
  const double a = g.x(0);
  const double b = g.x(g.n - 1);
  std::vector<double> out(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double qp = phix[i];
    auto sing = [&](int j) {
      return (qp - phix[j]) * inv_root((i - j) * g.dx, phi[i] - phi[j]);
    };
    auto smooth = [&](int j) { return -(qp - phix[j]) * background[j]; };
    double value = detail::window_sum(i, whole(g), g.dx,
                                      DiagonalMode::analytic_limit, sing, smooth);
    const double dl = end_gap(g, i, 0);
    const double dr = end_gap(g, i, g.n - 1);
    value += qp * (tail_difference(dl, std::abs(phi[i] - phi.front()), -a,
                                   h + phi.front()) +
                   tail_difference(dr, std::abs(phi[i] - phi.back()), b,
                                   h + phi.back()));
    out[i] = value;
  }
  return out;
}

std::vector<double> normal_velocity_II(const FrontState& state,
                                       std::span<const double> phix,
                                       const GalileanShift& shift) {
  auto out = j_integral(state, phix, shift.h);
  for (int i = 0; i < state.grid.n; ++i) {
    out[i] += phix[i] * shift.ubar - shift.vbar;
  }
  return out;
}

std::vector<double> normal_velocity_II(const FrontState& state,
                                       const GalileanShift& shift) {
  const auto q = line_slope(state);
  return normal_velocity_II(state, q, shift);
}

BoxReport box_riesz_crosscheck(const FrontState& state, double h,
                               const BoxSpec& box) {
  const auto phix = line_slope(state);
  require_depth(state, h);
  if (!(box.length > 0.0) || !is_power_of_two(box.n) || box.n < 8) {
    throw InvalidArgument("box: length must be positive and n a power of two");
  }
  if (!(box.smoothing_cells > 0.0) || !(box.probe_offset > 0.0) ||
      !(box.probe_span >= 0.0)) {
    throw InvalidArgument("box: smoothing, probe offset and span must be positive");
  }
  const int n = box.n;
  const double L = box.length;
  const double d = L / n;
  const double top = *std::max_element(state.phi.begin(), state.phi.end());
  const double y0 = 0.5 * (top - h) - 0.5 * L;
  const double x0 = -0.5 * L;
  const double probe_y_target = top + box.probe_offset;
  const double margin = 0.1 * L;
  if (-h < y0 + margin || probe_y_target > y0 + L - margin ||
      box.probe_span > 0.5 * L - margin) {
    throw InvalidArgument("box: the strip or the probes come within 10% of the "
                          "box boundary; enlarge the box");
  }

  const double sigma = box.smoothing_cells * d;
  std::vector<double> front(n);
  for (int jx = 0; jx < n; ++jx) front[jx] = interpolate(state, x0 + jx * d);
  auto step = [sigma](double t) { return 0.5 * std::erfc(-t / sigma); };
  std::vector<double> theta(static_cast<std::size_t>(n) * n);
  for (int jy = 0; jy < n; ++jy) {
    const double y = y0 + jy * d;
    for (int jx = 0; jx < n; ++jx) {
      theta[static_cast<std::size_t>(jy) * n + jx] =
          -2.0 * kPi * (step(front[jx] - y) - step(-h - y));
    }
  }

  auto coeffs = detail::rfft2(std::move(theta), n, n);
  const int nc = n / 2 + 1;
  auto uhat = coeffs;
  auto& vhat = coeffs;
  for (int ky = 0; ky < n; ++ky) {
    const int my = ky < n / 2 ? ky : ky - n;
    const double eta = 2.0 * kPi * my / L;
    for (int kx = 0; kx < nc; ++kx) {
      const double xi = 2.0 * kPi * kx / L;
      const std::size_t idx = static_cast<std::size_t>(ky) * nc + kx;
      const double k = std::hypot(xi, eta);
      const bool nyquist = (2 * kx == n) || (2 * ky == n);
      if (k == 0.0 || nyquist) {
        uhat[idx] = 0.0;
        vhat[idx] = 0.0;
        continue;
      }
      const Complex t = coeffs[idx];
      uhat[idx] = Complex(0.0, -eta / k) * t;
      vhat[idx] = Complex(0.0, xi / k) * t;
    }
  }
  const auto ubox = detail::irfft2(std::move(uhat), n, n);
  const auto vbox = detail::irfft2(std::move(vhat), n, n);
  const double norm = 1.0 / (static_cast<double>(n) * n);

  const int jy = static_cast<int>(std::lround((probe_y_target - y0) / d));
  const double py = y0 + jy * d;
  const auto shift = galilean_shift(state, phix, h);
  BoxReport report;
  report.probe_y = py;
  for (int jx = 0; jx < n; ++jx) {
    const double px = x0 + jx * d;
    if (std::abs(px) > box.probe_span) continue;
    const auto s = velocity_at(state, phix, px, py, shift);
    const std::size_t idx = static_cast<std::size_t>(jy) * n + jx;
    const double ustar = s.u - 2.0 * std::log(std::abs(py + h));
    report.mismatch = std::max({report.mismatch,
                                std::abs(ustar - norm * ubox[idx]),
                                std::abs(s.v - norm * vbox[idx])});
    ++report.probes;
  }
  return report;
}

}  // namespace sqgfront
