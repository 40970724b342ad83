#pragma once

// Uniform 1D grids, discrete Fourier transforms and Fourier multipliers.
//
// DFT convention (used by every multiplier table in the library):
//
//   forward:  X_k = sum_j v_j exp(-2 pi i j k / n)
//   inverse:  v_j = (1/n) sum_k X_k exp(+2 pi i j k / n)
//
// Coefficients are stored in FFT order: k = 0, 1, ..., n/2 - 1, -n/2, ..., -1,
// and index k corresponds to the wavenumber xi_k = 2 pi k / (n dx).

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace sqgfront {

using Complex = std::complex<double>;

struct LineGrid {
  double x_min = 0.0;
  int n = 0;
  double dx = 0.0;
  bool periodic = false;

  double x(int j) const { return x_min + j * dx; }
  double length() const { return n * dx; }
  std::vector<double> coordinates() const;
};

bool is_power_of_two(long n);

/// Builds a grid with n points and spacing length / n starting at x_min.
LineGrid make_grid(double x_min, double length, int n, bool periodic);

/// Samples of the front y = phi(x, t) on a grid.
struct FrontState {
  LineGrid grid;
  std::vector<double> phi;
  double t = 0.0;
};

/// Throws InvalidArgument on size mismatch or non-finite samples.
void validate_state(const FrontState& state);

/// Checks that phi minus its far-field constant vanishes (to tol) outside
/// the middle half of a line-mode grid. Throws InvalidArgument otherwise.
void validate_line_support(const FrontState& state, double tol = 1e-12);

std::vector<Complex> dft(std::span<const double> values);
std::vector<Complex> dft(std::span<const Complex> values);
std::vector<Complex> idft(std::span<const Complex> coeffs);

/// Inverse transform keeping only the real part. If max_imag is non-null it
/// receives the largest discarded imaginary component.
std::vector<double> idft_real(std::span<const Complex> coeffs,
                              double* max_imag = nullptr);

/// Symbol 2 i xi log|xi| of 2 log|d/dx| d/dx, continuous at xi = 0.
Complex linear_symbol(double xi);

/// Immutable wavenumber and multiplier tables for one periodic grid.
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(const LineGrid& grid);

  const LineGrid& grid() const { return grid_; }
  std::span<const double> xi() const { return xi_; }
  std::span<const Complex> lin_multiplier() const { return lin_multiplier_; }
  std::span<const Complex> derivative_multiplier() const { return derivative_; }
  /// 1 where |k| <= n/3 (two-thirds rule), 0 otherwise.
  std::span<const std::uint8_t> dealias_mask() const { return dealias_mask_; }

  /// Largest |xi| on the grid (the Nyquist wavenumber pi / dx).
  double xi_max() const;

  /// idft(multiplier * dft(values)), real part.
  std::vector<double> apply(std::span<const double> values,
                            std::span<const Complex> multiplier,
                            double* max_imag = nullptr) const;

 private:
  LineGrid grid_;
  std::vector<double> xi_;
  std::vector<Complex> lin_multiplier_;
  std::vector<Complex> derivative_;
  std::vector<std::uint8_t> dealias_mask_;
};

/// Samples of 2 log|d/dx| phi_x. Periodic grids only.
std::vector<double> apply_linear_multiplier(const FrontState& state,
                                            const SpectralWorkspace& ws);

std::vector<double> spectral_derivative(const FrontState& state);
std::vector<double> spectral_derivative(const FrontState& state,
                                        const SpectralWorkspace& ws);

/// How a line grid is closed at its two ends.
enum class LineEnds {
  one_sided,  // fourth-order one-sided stencils
  flat,       // ghost nodes equal to the end values (front flat beyond)
};

/// Fourth-order centered differences; wrap-around on a periodic grid.
std::vector<double> finite_difference_derivative(const FrontState& state,
                                                 LineEnds ends = LineEnds::one_sided);

/// Zeroes the modes outside the two-thirds band.
std::vector<double> dealias(std::span<const double> values,
                            const SpectralWorkspace& ws);

/// Samples of phi(x - shift) on the same periodic grid (exact for
/// band-limited data).
std::vector<double> spectral_shift(const FrontState& state, double shift);

/// Value of phi at an arbitrary x. Periodic grids use the trigonometric
/// interpolant; line grids use 8-point Lagrange interpolation and the end
/// values beyond the grid.
double interpolate(const FrontState& state, double x);

}  // namespace sqgfront
