#include "sqgfront/singular_quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <sstream>

#include "sqgfront/constants.hpp"
#include "sqgfront/errors.hpp"
#include "window_quadrature.hpp"

namespace sqgfront {

namespace {

using detail::inv_root;
using detail::tail_difference;
using Gauss = boost::math::quadrature::gauss<double, 15>;

void check_inputs(const FrontState& state, std::span<const double> phix,
                  const char* what) {
  validate_state(state);
  if (static_cast<int>(phix.size()) != state.grid.n) {
    throw InvalidArgument(std::string(what) + ": phi_x has the wrong length");
  }
  for (double q : phix) {
    if (!std::isfinite(q)) {
      throw InvalidArgument(std::string(what) + ": non-finite phi_x");
    }
  }
}

// Rejects slopes that have not decayed at the ends of a line grid.
void check_decay(std::span<const double> phix, const char* what) {
  double peak = 1.0;
  for (double q : phix) peak = std::max(peak, std::abs(q));
  const double tol = 1e-3 * peak;
  if (std::abs(phix.front()) > tol || std::abs(phix.back()) > tol) {
    throw InvalidArgument(std::string(what) +
                          ": phi_x does not decay at the ends of the grid");
  }
}

struct Distances {
  double left;
  double right;
};

// Distances from node i to the window ends, floored at half a cell so that
// the 1/|x - x'| tails stay finite for targets sitting on a window end.
Distances window_distances(const LineGrid& g, int i, detail::Window w) {
  const double floor = 0.5 * g.dx;
  return {std::max((i - w.lo) * g.dx, floor), std::max((w.hi - i) * g.dx, floor)};
}

std::vector<double> i1_periodic(const FrontState& state,
                                std::span<const double> q,
                                DiagonalMode mode) {
  const int n = state.grid.n;
  const double h = state.grid.dx;
  const double* phi = state.phi.data();
  const double* qq = q.data();
  std::vector<double> out(n, 0.0);
  std::vector<double> term(n);
  // Pairs (i, i + d) for i in [lo, hi) with the partner index shifted by off.
  auto pairs = [&](int d, int lo, int hi, int off, double w) {
    const double a = d * h;
    for (int i = lo; i < hi; ++i) {
      const double dp = phi[i] - phi[i + off];
      const double d2 = dp * dp;
      const double r = std::sqrt(a * a + d2);
      term[i] = -w * h * (qq[i] - qq[i + off]) * d2 / (a * r * (a + r));
    }
    for (int i = lo; i < hi; ++i) {
      out[i] += term[i];
      out[i + off] -= term[i];
    }
  };
  for (int d = 1; d <= n / 2; ++d) {
    double w = 1.0;
    if (mode == DiagonalMode::analytic_limit && d <= 3) {
      w += detail::kDiagonalCorrection[d - 1];
    }
    // Offset n/2 reaches the same node from both sides; visit each pair once.
    if (2 * d == n) {
      pairs(d, 0, n / 2, d, w);
    } else {
      pairs(d, 0, n - d, d, w);
      pairs(d, n - d, n, d - n, w);
    }
  }
  return out;
}

}  // namespace

double default_depth(std::span<const double> phi) {
  double lowest = 0.0;
  for (double v : phi) lowest = std::min(lowest, v);
  return 1.0 + 2.0 * std::max(0.0, -lowest);
}

KernelParams default_kernel_params(const FrontState& state) {
  return KernelParams{default_depth(state.phi), state.grid.length(),
                      DiagonalMode::analytic_limit};
}

double effective_lambda(const KernelParams& params, const LineGrid& grid) {
  if (params.lambda < 0.0 || !std::isfinite(params.lambda)) {
    throw InvalidArgument("kernel: lambda must be finite and non-negative");
  }
  const double lambda = params.lambda == 0.0 ? grid.length() : params.lambda;
  if (lambda > grid.length()) {
    throw InvalidArgument("kernel: lambda exceeds the domain length");
  }
  if (lambda < 10.0 * grid.dx) {
    throw InvalidArgument("kernel: lambda must cover at least 10 grid cells");
  }
  return lambda;
}

void require_depth(const FrontState& state, double h) {
  if (!std::isfinite(h)) throw InvalidArgument("depth h must be finite");
  for (double v : state.phi) {
    if (!(h + v > 0.0)) {
      std::ostringstream msg;
      msg << "depth h = " << h << " does not satisfy h + phi > 0 (min phi = "
          << *std::min_element(state.phi.begin(), state.phi.end()) << ")";
      throw InvalidArgument(msg.str());
    }
  }
}

double kernel_difference(double dx, double dphi) {
  if (dx == 0.0) {
    throw InvalidArgument("kernel_difference: dx = 0 (use the diagonal rule)");
  }
  const double a = std::abs(dx);
  const double d2 = dphi * dphi;
  const double r = std::sqrt(a * a + d2);
  return d2 / (a * r * (a + r));
}

std::vector<double> i1_nonlinear(const FrontState& state,
                                 std::span<const double> phix,
                                 const KernelParams& params) {
  check_inputs(state, phix, "i1_nonlinear");
  if (state.grid.periodic) return i1_periodic(state, phix, params.diagonal_mode);

  check_decay(phix, "i1_nonlinear");
  const LineGrid& g = state.grid;
  const double lambda = effective_lambda(params, g);
  const auto& phi = state.phi;
  std::vector<double> out(g.n);
  for (int i = 0; i < g.n; ++i) {
    const auto w = detail::window_around(g, i, lambda);
    const double qp = phix[i];
    const double php = phi[i];
    auto sing = [&](int j) {
      return -(qp - phix[j]) * kernel_difference((i - j) * g.dx, php - phi[j]);
    };
    auto smooth = [](int) { return 0.0; };
    double value = detail::window_sum(i, w, g.dx, params.diagonal_mode, sing, smooth);
    const auto d = window_distances(g, i, w);
    const double dl = std::abs(php - phi[w.lo]);
    const double dr = std::abs(php - phi[w.hi]);
    value += qp * (tail_difference(d.left, dl, d.left, 0.0) +
                   tail_difference(d.right, dr, d.right, 0.0));
    out[i] = value;
  }
  return out;
}

std::vector<double> i2_linear_quadrature(const FrontState& state,
                                         std::span<const double> phix,
                                         const KernelParams& params) {
  check_inputs(state, phix, "i2_linear_quadrature");
  if (state.grid.periodic) {
    throw InvalidArgument("i2_linear_quadrature: line grids only (the periodic "
                          "backend applies the Fourier symbol)");
  }
  check_decay(phix, "i2_linear_quadrature");
  const LineGrid& g = state.grid;
  const double lambda = effective_lambda(params, g);
  std::vector<double> background(g.n);
  for (int j = 0; j < g.n; ++j) background[j] = inv_root(g.x(j), 1.0);

  std::vector<double> out(g.n);
  for (int i = 0; i < g.n; ++i) {
    const auto w = detail::window_around(g, i, lambda);
    const double qp = phix[i];
    auto sing = [&](int j) { return (qp - phix[j]) / (std::abs(i - j) * g.dx); };
    auto smooth = [&](int j) { return -qp * background[j]; };
    double value = detail::window_sum(i, w, g.dx, params.diagonal_mode, sing, smooth);
    const auto d = window_distances(g, i, w);
    const double a = g.x(w.lo);
    const double b = g.x(w.hi);
    // Beyond the window: qp [1/|x - x'| - 1/sqrt(x'^2 + 1)].
    value += qp * (tail_difference(d.left, 0.0, -a, 1.0) +
                   tail_difference(d.right, 0.0, b, 1.0));
    out[i] = value;
  }
  return out;
}

std::vector<double> i3_term(const FrontState& state,
                            std::span<const double> phix,
                            const KernelParams& params) {
  check_inputs(state, phix, "i3_term");
  require_depth(state, params.h);
  const LineGrid& g = state.grid;
  if (g.periodic) {
    throw InvalidArgument("i3_term: line grids only");
  }
  const double lambda = effective_lambda(params, g);
  std::vector<double> background(g.n);
  for (int j = 0; j < g.n; ++j) background[j] = inv_root(g.x(j), 1.0);

  std::vector<double> out(g.n);
  for (int i = 0; i < g.n; ++i) {
    const auto w = detail::window_around(g, i, lambda);
    const double p = g.x(i);
    const double c = state.phi[i] + params.h;
    auto sing = [](int) { return 0.0; };
    auto smooth = [&](int j) { return background[j] - inv_root(g.x(j) - p, c); };
    double bracket = detail::window_sum(i, w, g.dx, DiagonalMode::analytic_limit,
                                        sing, smooth);
    const double a = g.x(w.lo);
    const double b = g.x(w.hi);
    // Beyond the window: 1/sqrt(x'^2 + 1) - 1/sqrt((x - x')^2 + c^2).
    bracket += tail_difference(-a, 1.0, p - a, c) + tail_difference(b, 1.0, b - p, c);
    bracket -= 2.0 * std::log(c);
    out[i] = phix[i] * bracket;
  }
  return out;
}

double scale_identity(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw InvalidArgument("scale_identity: c must be positive");
  }
  auto f = [c](double s) { return inv_root(s, 1.0) - inv_root(s, c); };
  // Panels no wider than a quarter of the smaller scale near the origin,
  // then geometric growth out to the cutoff.
  const double small = std::min(1.0, c);
  const double large = std::max(1.0, c);
  const double cutoff = 1e4 * large;
  double sum = 0.0;
  double a = 0.0;
  double width = 0.25 * small;
  while (a < cutoff) {
    const double b = std::min(a + width, cutoff);
    sum += Gauss::integrate(f, a, b);
    a = b;
    if (a >= 4.0 * large) width = 0.5 * a;
  }
  // int_cutoff^inf of the same integrand, in closed form.
  sum += tail_difference(cutoff, 1.0, cutoff, c);
  return sum;
}

double cosine_integrand(double s) {
  if (s == 0.0) return -1.0;
  const double half = std::sin(0.5 * s);
  return 2.0 * half * half / s - inv_root(s, 1.0);
}

double cosine_integral_constant(double cutoff) {
  if (!(cutoff >= 100.0)) {
    throw InvalidArgument("cosine_integral_constant: cutoff must be >= 100");
  }
  const long periods = static_cast<long>(std::floor(cutoff / (2.0 * kPi)));
  const double end = 2.0 * kPi * static_cast<double>(periods);

  // Neumaier-compensated sum over half-period panels.
  double sum = 0.0;
  double carry = 0.0;
  auto add = [&](double v) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  };
  for (int k = 0; k < 16; ++k) {
    add(Gauss::integrate(cosine_integrand, 0.5 * k, 0.5 * (k + 1)));
  }
  double a = 8.0;
  const double step = kPi;
  double b = step * std::ceil(a / step);
  add(Gauss::integrate(cosine_integrand, a, b));
  for (a = b; a < end - 0.5 * step; a += step) {
    add(Gauss::integrate(cosine_integrand, a, a + step));
  }
  sum += carry;

  // Remainder on [end, inf): (1/s - 1/sqrt(s^2+1)) - cos(s)/s.
  const double S = end;
  const double algebraic = std::log1p(1.0 / (2.0 * S * (std::hypot(S, 1.0) + S)));
  // Ci(S) = f(S) sin S - g(S) cos S with the auxiliary asymptotic series.
  double f = 0.0;
  double g = 0.0;
  double term_f = 1.0 / S;
  double term_g = 1.0 / (S * S);
  for (int k = 0; k < 6; ++k) {
    f += term_f;
    g += term_g;
    term_f *= -(2.0 * k + 1.0) * (2.0 * k + 2.0) / (S * S);
    term_g *= -(2.0 * k + 2.0) * (2.0 * k + 3.0) / (S * S);
  }
  const double ci = f * std::sin(S) - g * std::cos(S);
  return sum + algebraic + ci;
}

double i1_double_sum(const FrontState& state, std::span<const double> phix) {
  check_inputs(state, phix, "i1_double_sum");
  const int n = state.grid.n;
  const double h = state.grid.dx;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int d = j - i;
      if (state.grid.periodic) {
        d = ((d % n) + n) % n;
        if (d > n / 2) d -= n;
      }
      total -= (phix[i] - phix[j]) *
               kernel_difference(d * h, state.phi[i] - state.phi[j]) * h * h;
    }
  }
  return total;
}

}  // namespace sqgfront
