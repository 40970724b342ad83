#pragma once

// Closed forms of the half-space extension of the planar front: the
// harmonic function Phi, its z-antiderivative Psi and the boundary trace psi.

#include <functional>

namespace sqgfront {

struct HalfSpacePoint {
  double y = 0.0;
  double z = 1.0;
};

/// pi + 2 atan(y / z), z > 0.
double phi_harmonic(HalfSpacePoint p);

/// -2y + y log(y^2 + z^2) + 2 z atan(y / z) + pi z, z > 0.
double psi_stream(HalfSpacePoint p);

/// -2y + 2y log|y|; 0 at y = 0 by continuity.
double boundary_psi(double y);

/// Five-point Laplacian of f at p with spacing step.
double laplacian_fd(const std::function<double(HalfSpacePoint)>& f,
                    HalfSpacePoint p, double step);

/// Centered difference of f in z.
double dz_fd(const std::function<double(HalfSpacePoint)>& f, HalfSpacePoint p,
             double step);

}  // namespace sqgfront
