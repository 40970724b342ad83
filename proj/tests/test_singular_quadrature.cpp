#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sqgfront/errors.hpp"
#include "sqgfront/grid_spectral.hpp"
#include "sqgfront/initial_data.hpp"
#include "sqgfront/singular_quadrature.hpp"

using namespace sqgfront;

namespace {

// gamma - log 2 to 30 digits.
constexpr double kGammaMinusLog2 = -0.115931515658412448810720031376;

FrontSpec gaussian(double amplitude = 1.0) {
  FrontSpec s;
  s.family = FrontFamily::gaussian;
  s.amplitude = amplitude;
  return s;
}

FrontSpec windowed_mode(double xi) {
  FrontSpec s;
  s.family = FrontFamily::windowed_cosine;
  s.amplitude = 1.0;
  s.wavenumber = xi;
  s.plateau = 12.0;
  s.taper = 12.0;
  return s;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

int node_at(const LineGrid& g, double x) {
  const int i = static_cast<int>(std::lround((x - g.x_min) / g.dx));
  REQUIRE(std::abs(g.x(i) - x) < 1e-12);
  return i;
}

struct Sampled {
  FrontState state;
  std::vector<double> phix;
};

Sampled sample(const FrontSpec& spec, double x_min, double length, int n,
               bool periodic = false) {
  auto g = make_grid(x_min, length, n, periodic);
  return {make_state(spec, g), sample_slope(spec, g)};
}

}  // namespace

TEST_CASE("kernel_difference values") {
  CHECK(kernel_difference(1.0, 0.0) == 0.0);
  CHECK(kernel_difference(1.0, 1.0) == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(kernel_difference(0.0, 1.0), InvalidArgument);

  // Small separation at fixed slope m: (sqrt(1+m^2) - 1) / (|dx| sqrt(1+m^2)).
  for (double m : {1e-6, 0.3, 2.0}) {
    for (double dx : {1e-3, 1e-8, -1e-12}) {
      const double s = std::sqrt(1.0 + m * m);
      // sqrt(1+m^2) - 1 = m^2 / (s + 1) avoids cancellation in the reference.
      const double expect = m * m / (s + 1.0) / (std::abs(dx) * s);
      CHECK(kernel_difference(dx, m * dx) == doctest::Approx(expect).epsilon(1e-13));
    }
  }
}

TEST_CASE("kernel_difference is even, monotone and bounded in dphi") {
  double prev = -1.0;
  for (double d : {0.0, 0.01, 0.1, 1.0, 10.0, 1e3, 1e8}) {
    const double k = kernel_difference(0.5, d);
    CHECK(k == kernel_difference(0.5, -d));
    CHECK(k >= 0.0);
    CHECK(k <= 2.0);
    CHECK(k > prev);
    prev = k;
  }
  CHECK(kernel_difference(0.5, 1e12) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("I1 integrand jumps at the diagonal with antisymmetric limits") {
  // One-sided limits x' -> x+- of the I1 integrand are
  // +- phi_xx (sqrt(1 + p^2) - 1) / sqrt(1 + p^2), so their average is 0.
  auto s = gaussian();
  for (double x : {0.3, 0.7, 1.5}) {
    const double p = front_slope(s, x);
    const double pxx = (4.0 * x * x - 2.0) * std::exp(-x * x);
    const double root = std::sqrt(1.0 + p * p);
    const double limit = pxx * (root - 1.0) / root;
    auto integrand = [&](double xp) {
      return -(p - front_slope(s, xp)) *
             oracle::kernel_gap(x - xp, front_value(s, x) - front_value(s, xp));
    };
    const double eps = 1e-6;
    const double right = integrand(x + eps);
    const double left = integrand(x - eps);
    CHECK(right == doctest::Approx(limit).epsilon(1e-5));
    CHECK(left == doctest::Approx(-limit).epsilon(1e-5));
    // The average is O(eps).
    CHECK(std::abs(right + left) < 10.0 * eps);
  }
}

TEST_CASE("I1 vanishes on a flat front") {
  FrontSpec flat;
  flat.offset = 0.4;
  auto [st, q] = sample(flat, -16.0, 32.0, 128);
  for (double v : i1_nonlinear(st, q, KernelParams{})) CHECK(v == 0.0);
  auto [sp, qp] = sample(flat, -16.0, 32.0, 128, true);
  for (double v : i1_nonlinear(sp, qp, KernelParams{})) CHECK(v == 0.0);
}

TEST_CASE("I1 is cubic in the amplitude") {
  std::vector<double> peak;
  for (double a : {1e-2, 1e-3}) {
    auto [st, q] = sample(gaussian(a), -32.0, 64.0, 512);
    peak.push_back(max_abs(i1_nonlinear(st, q, KernelParams{})));
  }
  const double slope = std::log10(peak[0] / peak[1]);
  CHECK(slope == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("I1 and I2 match the adaptive oracle") {
  auto spec = gaussian();
  auto phi = [&](double x) { return front_value(spec, x); };
  auto dphi = [&](double x) { return front_slope(spec, x); };
  auto [st, q] = sample(spec, -32.0, 64.0, 1024);
  const auto i1 = i1_nonlinear(st, q, KernelParams{});
  const auto i2 = i2_linear_quadrature(st, q, KernelParams{});
  for (double x : {0.0, 0.3125, 0.75, 1.5}) {
    const int i = node_at(st.grid, x);
    CHECK(std::abs(i1[i] - oracle::i1(phi, dphi, x)) < 1e-8);
    CHECK(std::abs(i2[i] - oracle::i2(dphi, x)) < 1e-8);
  }
}

TEST_CASE("quadrature error drops at least 8x per halving of dx") {
  auto spec = gaussian();
  auto phi = [&](double x) { return front_value(spec, x); };
  auto dphi = [&](double x) { return front_slope(spec, x); };
  const double xs[] = {0.5, 1.0, 1.5};
  double ref1[3];
  double ref2[3];
  for (int k = 0; k < 3; ++k) {
    ref1[k] = oracle::i1(phi, dphi, xs[k]);
    ref2[k] = oracle::i2(dphi, xs[k]);
  }
  double prev1 = 0.0;
  double prev2 = 0.0;
  double prev_skip = 0.0;
  for (int n : {128, 256, 512}) {
    auto [st, q] = sample(spec, -32.0, 64.0, n);
    KernelParams skip;
    skip.diagonal_mode = DiagonalMode::skip_point;
    const auto a = i1_nonlinear(st, q, KernelParams{});
    const auto b = i2_linear_quadrature(st, q, KernelParams{});
    const auto c = i1_nonlinear(st, q, skip);
    double e1 = 0.0, e2 = 0.0, es = 0.0;
    for (int k = 0; k < 3; ++k) {
      const int i = node_at(st.grid, xs[k]);
      e1 = std::max(e1, std::abs(a[i] - ref1[k]));
      e2 = std::max(e2, std::abs(b[i] - ref2[k]));
      es = std::max(es, std::abs(c[i] - ref1[k]));
    }
    if (prev1 > 0.0) {
      CHECK(prev1 / e1 >= 8.0);
      CHECK(prev2 / e2 >= 8.0);
      // Dropping the diagonal node leaves a first-derivative jump: second order.
      CHECK(prev_skip / es == doctest::Approx(4.0).epsilon(0.1));
    }
    prev1 = e1;
    prev2 = e2;
    prev_skip = es;
  }
}

TEST_CASE("I2 reproduces the Fourier symbol on windowed modes") {
  for (double xi : {1.0, 2.0, 4.0}) {
    auto [st, q] = sample(windowed_mode(xi), -64.0, 128.0, 2048);
    const auto i2 = i2_linear_quadrature(st, q, KernelParams{});
    const double amp = 2.0 * xi * std::abs(std::log(xi) + kGammaMinusLog2);
    double err = 0.0;
    for (int i = 0; i < st.grid.n; ++i) {
      const double x = st.grid.x(i);
      if (std::abs(x) > 2.0) continue;
      const double expect =
          -2.0 * xi * (std::log(xi) + kGammaMinusLog2) * std::sin(xi * x);
      err = std::max(err, std::abs(i2[i] - expect));
    }
    CHECK(err / amp <= 1e-3);
  }
}

TEST_CASE("I2 agrees with the spectral linear term on windowed modes") {
  const double xi = 2.0;
  auto spec = windowed_mode(xi);
  auto [line, q] = sample(spec, -64.0, 128.0, 2048);
  auto [per, qp] = sample(spec, -64.0, 128.0, 2048, true);
  SpectralWorkspace ws(per.grid);
  auto spectral = apply_linear_multiplier(per, ws);
  const auto d = spectral_derivative(per, ws);
  for (int j = 0; j < per.grid.n; ++j) spectral[j] += 2.0 * kGammaMinusLog2 * d[j];
  const auto quad = i2_linear_quadrature(line, q, KernelParams{});
  double err = 0.0;
  for (int i = 0; i < line.grid.n; ++i) {
    if (std::abs(line.grid.x(i)) <= 2.0) err = std::max(err, std::abs(quad[i] - spectral[i]));
  }
  CHECK(err / max_abs(spectral) <= 1e-3);
}

TEST_CASE("I2 input checks") {
  FrontSpec flat;
  auto [st, q] = sample(flat, -16.0, 32.0, 128);
  for (double v : i2_linear_quadrature(st, q, KernelParams{})) CHECK(v == 0.0);

  FrontSpec mode;
  mode.family = FrontFamily::mode;
  mode.amplitude = 1.0;
  auto [sm, qm] = sample(mode, -16.0, 32.0, 128);
  CHECK_THROWS_AS(i2_linear_quadrature(sm, qm, KernelParams{}), InvalidArgument);

  auto [sp, qp] = sample(gaussian(), -16.0, 32.0, 128, true);
  CHECK_THROWS_AS(i2_linear_quadrature(sp, qp, KernelParams{}), InvalidArgument);
}

TEST_CASE("truncation radius validation") {
  auto [st, q] = sample(gaussian(), -16.0, 32.0, 128);
  KernelParams k;
  k.lambda = 40.0;
  CHECK_THROWS_AS(i1_nonlinear(st, q, k), InvalidArgument);
  k.lambda = 1.0;
  CHECK_THROWS_AS(i1_nonlinear(st, q, k), InvalidArgument);
  k.lambda = -1.0;
  CHECK_THROWS_AS(i1_nonlinear(st, q, k), InvalidArgument);
  k.lambda = 0.0;
  CHECK(effective_lambda(k, st.grid) == 32.0);

  auto bad = st;
  bad.phi[5] = std::nan("");
  CHECK_THROWS_AS(i1_nonlinear(bad, q, KernelParams{}), InvalidArgument);
}

TEST_CASE("I3 vanishes") {
  {
    FrontSpec flat;
    auto [st, q] = sample(flat, -16.0, 32.0, 256);
    KernelParams k;
    k.h = 1.0;
    CHECK(max_abs(i3_term(st, q, k)) < 1e-14);
  }
  {
    auto [st, q] = sample(gaussian(), -32.0, 64.0, 1024);
    KernelParams k;
    k.h = 2.0;
    CHECK(max_abs(i3_term(st, q, k)) <= 1e-8);
  }
  {
    FrontSpec r;
    r.family = FrontFamily::random_bump;
    r.amplitude = 1.5;
    r.width = 2.0;
    r.seed = 11;
    auto [st, q] = sample(r, -32.0, 64.0, 1024);
    KernelParams k;
    k.h = 3.0;
    CHECK(max_abs(i3_term(st, q, k)) <= 1e-8);
  }
}

TEST_CASE("I3 requires h + phi > 0") {
  auto [st, q] = sample(gaussian(-1.0), -16.0, 32.0, 128);
  KernelParams k;
  k.h = 0.5;
  CHECK_THROWS_AS(i3_term(st, q, k), InvalidArgument);
  CHECK(default_depth(st.phi) == doctest::Approx(3.0));
  k.h = default_depth(st.phi);
  CHECK_NOTHROW(i3_term(st, q, k));
}

TEST_CASE("scale identity") {
  CHECK(scale_identity(1.0) == 0.0);
  CHECK(std::abs(scale_identity(std::numbers::e) - 1.0) <= 1e-10);
  CHECK(std::abs(scale_identity(0.5) + 0.693147180559945309417232121458) <= 1e-10);
  CHECK(std::abs(scale_identity(0.1) + 2.30258509299404568401799145468) <= 1e-10);
  CHECK_THROWS_AS(scale_identity(0.0), InvalidArgument);
  CHECK_THROWS_AS(scale_identity(-2.0), InvalidArgument);
}

TEST_CASE("cosine-integral constant") {
  CHECK(std::abs(cosine_integral_constant() - kGammaMinusLog2) <= 1e-9);
  CHECK(cosine_integrand(0.0) == -1.0);
  CHECK(cosine_integrand(1e-8) == doctest::Approx(-1.0 + 0.5e-8).epsilon(1e-12));
  CHECK(std::abs(cosine_integral_constant(1e7) - cosine_integral_constant(1e6)) <= 1e-10);
  CHECK_THROWS_AS(cosine_integral_constant(10.0), InvalidArgument);
}

TEST_CASE("I1 double sum vanishes by antisymmetry") {
  FrontSpec r;
  r.family = FrontFamily::random_bump;
  r.amplitude = 1.0;
  r.seed = 5;
  auto [st, q] = sample(r, -16.0, 32.0, 256, true);
  CHECK(std::abs(i1_double_sum(st, q)) <= 1e-10);
  // The periodic pair sum conserves the mean exactly.
  double total = 0.0;
  for (double v : i1_nonlinear(st, q, KernelParams{})) total += v;
  CHECK(std::abs(total) <= 1e-12);
}
