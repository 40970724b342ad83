#pragma once

// Thin RAII layer over FFTW. Plans are created with FFTW_ESTIMATE so the
// input arrays are never touched during planning.

#include <fftw3.h>

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace sqgfront::detail {

struct PlanDeleter {
  void operator()(fftw_plan_s* plan) const { fftw_destroy_plan(plan); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

inline fftw_complex* as_fftw(std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(p);
}

/// In-place 1D transform; sign = FFTW_FORWARD or FFTW_BACKWARD. Unnormalized.
inline void fft_inplace(std::span<std::complex<double>> data, int sign) {
  auto* p = as_fftw(data.data());
  Plan plan(fftw_plan_dft_1d(static_cast<int>(data.size()), p, p, sign,
                             FFTW_ESTIMATE));
  fftw_execute(plan.get());
}

/// In-place 2D transform of an ny-by-nx row-major array. Unnormalized.
inline void fft2_inplace(std::span<std::complex<double>> data, int ny, int nx,
                         int sign) {
  auto* p = as_fftw(data.data());
  Plan plan(fftw_plan_dft_2d(ny, nx, p, p, sign, FFTW_ESTIMATE));
  fftw_execute(plan.get());
}

/// Real-to-complex 2D transform (ny x (nx/2+1) output, row-major).
inline std::vector<std::complex<double>> rfft2(std::vector<double> data, int ny,
                                               int nx) {
  std::vector<std::complex<double>> out(static_cast<size_t>(ny) * (nx / 2 + 1));
  Plan plan(fftw_plan_dft_r2c_2d(ny, nx, data.data(), as_fftw(out.data()),
                                 FFTW_ESTIMATE));
  fftw_execute(plan.get());
  return out;
}

/// Complex-to-real 2D inverse (destroys its input). Unnormalized.
inline std::vector<double> irfft2(std::vector<std::complex<double>> data,
                                  int ny, int nx) {
  std::vector<double> out(static_cast<size_t>(ny) * nx);
  Plan plan(fftw_plan_dft_c2r_2d(ny, nx, as_fftw(data.data()), out.data(),
                                 FFTW_ESTIMATE));
  fftw_execute(plan.get());
  return out;
}

}  // namespace sqgfront::detail
