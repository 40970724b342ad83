#include "sqgfront/grid_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fft.hpp"
#include "sqgfront/constants.hpp"
#include "sqgfront/errors.hpp"

namespace sqgfront {

namespace {

void require_periodic(const LineGrid& grid, const char* what) {
  if (!grid.periodic) {
    throw InvalidArgument(std::string(what) +
                          ": spectral operators need a periodic grid "
                          "(use the quadrature backend on line grids)");
  }
}

void require_pow2(size_t n, const char* what) {
  if (!is_power_of_two(static_cast<long>(n))) {
    std::ostringstream msg;
    msg << what << ": length " << n << " is not a power of two";
    throw InvalidArgument(msg.str());
  }
}

// Signed mode number of FFT-order index k.
int mode_number(int k, int n) { return k < n / 2 ? k : k - n; }

}  // namespace

std::vector<double> LineGrid::coordinates() const {
  std::vector<double> xs(n);
  for (int j = 0; j < n; ++j) xs[j] = x(j);
  return xs;
}

bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

LineGrid make_grid(double x_min, double length, int n, bool periodic) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidArgument("make_grid: length must be positive");
  }
  if (!std::isfinite(x_min)) {
    throw InvalidArgument("make_grid: x_min must be finite");
  }
  if (n < 8 || !is_power_of_two(n)) {
    throw InvalidArgument("make_grid: n must be a power of two >= 8, got " +
                          std::to_string(n));
  }
  return LineGrid{x_min, n, length / n, periodic};
}

void validate_state(const FrontState& state) {
  if (static_cast<int>(state.phi.size()) != state.grid.n) {
    throw InvalidArgument("front state: sample count does not match grid");
  }
  for (double v : state.phi) {
    if (!std::isfinite(v)) throw InvalidArgument("front state: non-finite phi");
  }
}

void validate_line_support(const FrontState& state, double tol) {
  validate_state(state);
  const int n = state.grid.n;
  const double far = state.phi.front();
  for (int j = 0; j < n; ++j) {
    if (j >= n / 4 && j < 3 * n / 4) continue;
    if (std::abs(state.phi[j] - far) > tol) {
      std::ostringstream msg;
      msg << "front state: phi departs from its far-field value " << far
          << " outside the middle half of the grid (x = " << state.grid.x(j)
          << ")";
      throw InvalidArgument(msg.str());
    }
  }
}

std::vector<Complex> dft(std::span<const double> values) {
  std::vector<Complex> data(values.begin(), values.end());
  require_pow2(data.size(), "dft");
  detail::fft_inplace(data, FFTW_FORWARD);
  return data;
}

std::vector<Complex> dft(std::span<const Complex> values) {
  std::vector<Complex> data(values.begin(), values.end());
  require_pow2(data.size(), "dft");
  detail::fft_inplace(data, FFTW_FORWARD);
  return data;
}

std::vector<Complex> idft(std::span<const Complex> coeffs) {
  std::vector<Complex> data(coeffs.begin(), coeffs.end());
  require_pow2(data.size(), "idft");
  detail::fft_inplace(data, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& c : data) c *= scale;
  return data;
}

std::vector<double> idft_real(std::span<const Complex> coeffs,
                              double* max_imag) {
  const auto data = idft(coeffs);
  std::vector<double> out(data.size());
  double imag = 0.0;
  for (size_t j = 0; j < data.size(); ++j) {
    out[j] = data[j].real();
    imag = std::max(imag, std::abs(data[j].imag()));
  }
  if (max_imag) *max_imag = imag;
  return out;
}

Complex linear_symbol(double xi) {
  if (xi == 0.0) return {0.0, 0.0};
  return {0.0, 2.0 * xi * std::log(std::abs(xi))};
}

SpectralWorkspace::SpectralWorkspace(const LineGrid& grid) : grid_(grid) {
  if (grid.n < 8 || !is_power_of_two(grid.n) || !(grid.dx > 0.0)) {
    throw InvalidArgument("SpectralWorkspace: invalid grid");
  }
  const int n = grid.n;
  const double dk = 2.0 * kPi / grid.length();
  xi_.resize(n);
  lin_multiplier_.resize(n);
  derivative_.resize(n);
  dealias_mask_.resize(n);
  for (int k = 0; k < n; ++k) {
    const int m = mode_number(k, n);
    xi_[k] = m * dk;
    // The Nyquist mode is its own conjugate partner; odd multipliers vanish
    // there so that real fields stay real.
    const bool nyquist = (m == -n / 2);
    lin_multiplier_[k] = nyquist ? Complex{} : linear_symbol(xi_[k]);
    derivative_[k] = nyquist ? Complex{} : Complex{0.0, xi_[k]};
    dealias_mask_[k] = (3 * std::abs(m) <= n) ? 1 : 0;
  }
}

double SpectralWorkspace::xi_max() const { return kPi / grid_.dx; }

std::vector<double> SpectralWorkspace::apply(std::span<const double> values,
                                             std::span<const Complex> multiplier,
                                             double* max_imag) const {
  if (values.size() != xi_.size() || multiplier.size() != xi_.size()) {
    throw InvalidArgument("SpectralWorkspace::apply: length mismatch");
  }
  std::vector<Complex> coeffs;
  if (multiplier[0] == Complex(0.0, 0.0)) {
    // The constant mode is discarded anyway; removing one sample first makes
    // constant input transform to exact zeros.
    std::vector<Complex> shifted(values.size());
    for (size_t j = 0; j < values.size(); ++j) shifted[j] = values[j] - values[0];
    coeffs = dft(std::span<const Complex>(shifted));
  } else {
    coeffs = dft(values);
  }
  for (size_t k = 0; k < coeffs.size(); ++k) coeffs[k] *= multiplier[k];
  return idft_real(coeffs, max_imag);
}

std::vector<double> apply_linear_multiplier(const FrontState& state,
                                            const SpectralWorkspace& ws) {
  require_periodic(state.grid, "apply_linear_multiplier");
  validate_state(state);
  if (ws.grid().n != state.grid.n || ws.grid().dx != state.grid.dx) {
    throw InvalidArgument("apply_linear_multiplier: workspace built for a "
                          "different grid");
  }
  return ws.apply(state.phi, ws.lin_multiplier());
}

std::vector<double> spectral_derivative(const FrontState& state) {
  require_periodic(state.grid, "spectral_derivative");
  return spectral_derivative(state, SpectralWorkspace(state.grid));
}

std::vector<double> spectral_derivative(const FrontState& state,
                                        const SpectralWorkspace& ws) {
  require_periodic(state.grid, "spectral_derivative");
  validate_state(state);
  return ws.apply(state.phi, ws.derivative_multiplier());
}

std::vector<double> finite_difference_derivative(const FrontState& state,
                                                 LineEnds ends) {
  validate_state(state);
  const int n = state.grid.n;
  if (n < 8) throw InvalidArgument("finite_difference_derivative: n < 8");
  const auto& f = state.phi;
  const double inv = 1.0 / (12.0 * state.grid.dx);
  std::vector<double> d(n);
  const bool ghosts = state.grid.periodic || ends == LineEnds::flat;
  auto at = [&](int j) {
    if (state.grid.periodic) return f[(j % n + n) % n];
    return f[std::clamp(j, 0, n - 1)];
  };
  for (int j = 0; j < n; ++j) {
    if (!ghosts && (j < 2 || j > n - 3)) continue;
    d[j] = (8.0 * (at(j + 1) - at(j - 1)) - (at(j + 2) - at(j - 2))) * inv;
  }
  if (!ghosts) {
    // Closures written in differences so that constants give exact zeros.
    auto dl = [&](int k, int r) { return f[k] - f[r]; };
    auto dr = [&](int k, int r) { return f[n - 1 - k] - f[n - 1 - r]; };
    d[0] = (48.0 * dl(1, 0) - 36.0 * dl(2, 0) + 16.0 * dl(3, 0) - 3.0 * dl(4, 0)) * inv;
    d[1] = (-3.0 * dl(0, 1) + 18.0 * dl(2, 1) - 6.0 * dl(3, 1) + dl(4, 1)) * inv;
    d[n - 1] = -(48.0 * dr(1, 0) - 36.0 * dr(2, 0) + 16.0 * dr(3, 0) -
                 3.0 * dr(4, 0)) * inv;
    d[n - 2] = -(-3.0 * dr(0, 1) + 18.0 * dr(2, 1) - 6.0 * dr(3, 1) + dr(4, 1)) * inv;
  }
  return d;
}

std::vector<double> dealias(std::span<const double> values,
                            const SpectralWorkspace& ws) {
  auto coeffs = dft(values);
  if (coeffs.size() != ws.dealias_mask().size()) {
    throw InvalidArgument("dealias: length mismatch");
  }
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (!ws.dealias_mask()[k]) coeffs[k] = 0.0;
  }
  return idft_real(coeffs);
}

std::vector<double> spectral_shift(const FrontState& state, double shift) {
  require_periodic(state.grid, "spectral_shift");
  validate_state(state);
  const int n = state.grid.n;
  const double dk = 2.0 * kPi / state.grid.length();
  auto coeffs = dft(state.phi);
  for (int k = 0; k < n; ++k) {
    const int m = mode_number(k, n);
    if (m == -n / 2) {
      // Split the Nyquist mode symmetrically so the shifted field stays real.
      coeffs[k] *= std::cos(m * dk * shift);
      continue;
    }
    coeffs[k] *= std::polar(1.0, -m * dk * shift);
  }
  return idft_real(coeffs);
}

double interpolate(const FrontState& state, double x) {
  const LineGrid& g = state.grid;
  const int n = g.n;
  if (g.periodic) {
    const auto coeffs = dft(state.phi);
    const double dk = 2.0 * kPi / g.length();
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
      const int m = mode_number(k, n);
      const double arg = m * dk * (x - g.x_min);
      if (m == -n / 2) {
        sum += coeffs[k].real() * std::cos(arg);
        continue;
      }
      sum += (coeffs[k] * std::polar(1.0, arg)).real();
    }
    return sum / n;
  }
  if (x <= g.x(0)) return state.phi.front();
  if (x >= g.x(n - 1)) return state.phi.back();
  const double s = (x - g.x_min) / g.dx;
  const int base = std::clamp(static_cast<int>(std::floor(s)) - 3, 0, n - 8);
  double sum = 0.0;
  for (int a = 0; a < 8; ++a) {
    double w = 1.0;
    for (int b = 0; b < 8; ++b) {
      if (b != a) w *= (s - (base + b)) / static_cast<double>(a - b);
    }
    sum += w * state.phi[base + a];
  }
  return sum;
}

}  // namespace sqgfront
