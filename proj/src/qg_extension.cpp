#include "sqgfront/qg_extension.hpp"

#include <cmath>

#include "sqgfront/constants.hpp"
#include "sqgfront/errors.hpp"

namespace sqgfront {

namespace {

void check_point(HalfSpacePoint p, const char* what) {
  if (!(p.z > 0.0) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
    throw InvalidArgument(std::string(what) + ": need finite y and z > 0");
  }
}

}  // namespace

double phi_harmonic(HalfSpacePoint p) {
  check_point(p, "phi_harmonic");
  return kPi + 2.0 * std::atan(p.y / p.z);
}

double psi_stream(HalfSpacePoint p) {
  check_point(p, "psi_stream");
  const double y = p.y;
  const double z = p.z;
  return -2.0 * y + y * std::log(y * y + z * z) + 2.0 * z * std::atan(y / z) +
         kPi * z;
}

double boundary_psi(double y) {
  if (!std::isfinite(y)) throw InvalidArgument("boundary_psi: non-finite y");
  if (y == 0.0) return 0.0;
  return -2.0 * y + 2.0 * y * std::log(std::abs(y));
}

double laplacian_fd(const std::function<double(HalfSpacePoint)>& f,
                    HalfSpacePoint p, double step) {
  if (!(step > 0.0) || !(p.z - step > 0.0)) {
    throw InvalidArgument("laplacian_fd: stencil must stay in z > 0");
  }
  const double c = f(p);
  const double sum = f({p.y + step, p.z}) + f({p.y - step, p.z}) +
                     f({p.y, p.z + step}) + f({p.y, p.z - step});
  return (sum - 4.0 * c) / (step * step);
}

double dz_fd(const std::function<double(HalfSpacePoint)>& f, HalfSpacePoint p,
             double step) {
  if (!(step > 0.0) || !(p.z - step > 0.0)) {
    throw InvalidArgument("dz_fd: stencil must stay in z > 0");
  }
  return (f({p.y, p.z + step}) - f({p.y, p.z - step})) / (2.0 * step);
}

}  // namespace sqgfront
