#pragma once

#include <numbers>

namespace sqgfront {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;
inline constexpr double kLog2 = std::numbers::ln2;

/// Advection speed 2(log 2 - gamma) of the front equation.
inline constexpr double kAdvectionSpeed = 2.0 * (kLog2 - kEulerGamma);

}  // namespace sqgfront
