#include "sqgfront/initial_data.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "sqgfront/errors.hpp"

namespace sqgfront {

namespace {

struct NamedFamily {
  FrontFamily family;
  std::string_view name;
};

constexpr std::array<NamedFamily, 6> kFamilies{{
    {FrontFamily::flat, "flat"},
    {FrontFamily::gaussian, "gaussian"},
    {FrontFamily::poly_bump, "poly_bump"},
    {FrontFamily::windowed_cosine, "windowed_cosine"},
    {FrontFamily::mode, "mode"},
    {FrontFamily::random_bump, "random_bump"},
}};

// C-infinity step: 1 at t <= 0, 0 at t >= 1.
double smooth_step(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return b / (a + b);
}

double smooth_step_slope(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  const double da = a / (t * t);
  const double db = -b / ((1.0 - t) * (1.0 - t));
  return (db * a - b * da) / ((a + b) * (a + b));
}

double window(const FrontSpec& s, double x) {
  return smooth_step((std::abs(x - s.center) - s.plateau) / s.taper);
}

double window_slope(const FrontSpec& s, double x) {
  const double r = x - s.center;
  const double sign = r < 0.0 ? -1.0 : 1.0;
  return sign * smooth_step_slope((std::abs(r) - s.plateau) / s.taper) /
         s.taper;
}

struct RandomMode {
  double amplitude;
  double wavenumber;
  double phase;
};

// Raw mt19937 words are portable; the std distributions are not.
std::vector<RandomMode> random_modes(const FrontSpec& s) {
  std::mt19937 gen(s.seed);
  auto unit = [&gen] { return static_cast<double>(gen()) / 4294967296.0; };
  std::vector<RandomMode> modes(std::max(s.modes, 1));
  for (auto& m : modes) {
    m.amplitude = (2.0 * unit() - 1.0) / static_cast<double>(modes.size());
    m.wavenumber = 2.0 * unit() / s.width;
    m.phase = 2.0 * 3.14159265358979323846 * unit();
  }
  return modes;
}

}  // namespace

std::string_view family_name(FrontFamily family) {
  for (const auto& f : kFamilies) {
    if (f.family == family) return f.name;
  }
  return "unknown";
}

FrontFamily parse_family(std::string_view name) {
  for (const auto& f : kFamilies) {
    if (f.name == name) return f.family;
  }
  throw InvalidArgument("unknown front family '" + std::string(name) + "'");
}

double front_value(const FrontSpec& s, double x) {
  const double r = x - s.center;
  switch (s.family) {
    case FrontFamily::flat:
      return s.offset;
    case FrontFamily::gaussian: {
      const double z = r / s.width;
      return s.offset + s.amplitude * std::exp(-z * z);
    }
    case FrontFamily::poly_bump: {
      const double z = r / s.width;
      if (std::abs(z) >= 1.0) return s.offset;
      return s.offset + s.amplitude * std::pow(1.0 - z * z, s.power);
    }
    case FrontFamily::windowed_cosine:
      return s.offset +
             s.amplitude * window(s, x) * std::cos(s.wavenumber * r + s.phase);
    case FrontFamily::mode:
      return s.offset + s.amplitude * std::cos(s.wavenumber * x + s.phase);
    case FrontFamily::random_bump: {
      const double z = r / s.width;
      const double envelope = std::exp(-z * z);
      double sum = 0.0;
      for (const auto& m : random_modes(s)) {
        sum += m.amplitude * std::cos(m.wavenumber * r + m.phase);
      }
      return s.offset + s.amplitude * envelope * sum;
    }
  }
  return s.offset;
}

double front_slope(const FrontSpec& s, double x) {
  const double r = x - s.center;
  switch (s.family) {
    case FrontFamily::flat:
      return 0.0;
    case FrontFamily::gaussian: {
      const double z = r / s.width;
      return -2.0 * s.amplitude * z / s.width * std::exp(-z * z);
    }
    case FrontFamily::poly_bump: {
      const double z = r / s.width;
      if (std::abs(z) >= 1.0) return 0.0;
      return -2.0 * s.power * s.amplitude * z / s.width *
             std::pow(1.0 - z * z, s.power - 1);
    }
    case FrontFamily::windowed_cosine: {
      const double arg = s.wavenumber * r + s.phase;
      return s.amplitude * (window_slope(s, x) * std::cos(arg) -
                            window(s, x) * s.wavenumber * std::sin(arg));
    }
    case FrontFamily::mode:
      return -s.amplitude * s.wavenumber *
             std::sin(s.wavenumber * x + s.phase);
    case FrontFamily::random_bump: {
      const double z = r / s.width;
      const double envelope = std::exp(-z * z);
      const double denvelope = -2.0 * z / s.width * envelope;
      double sum = 0.0;
      double dsum = 0.0;
      for (const auto& m : random_modes(s)) {
        const double arg = m.wavenumber * r + m.phase;
        sum += m.amplitude * std::cos(arg);
        dsum -= m.amplitude * m.wavenumber * std::sin(arg);
      }
      return s.amplitude * (denvelope * sum + envelope * dsum);
    }
  }
  return 0.0;
}

std::vector<double> sample_front(const FrontSpec& spec, const LineGrid& grid) {
  std::vector<double> out(grid.n);
  for (int j = 0; j < grid.n; ++j) out[j] = front_value(spec, grid.x(j));
  return out;
}

std::vector<double> sample_slope(const FrontSpec& spec, const LineGrid& grid) {
  std::vector<double> out(grid.n);
  for (int j = 0; j < grid.n; ++j) out[j] = front_slope(spec, grid.x(j));
  return out;
}

FrontState make_state(const FrontSpec& spec, const LineGrid& grid, double t) {
  if (!(spec.width > 0.0) || !(spec.taper > 0.0) || spec.plateau < 0.0 ||
      spec.power < 1) {
    throw InvalidArgument("front spec: width and taper must be positive, "
                          "plateau non-negative, power >= 1");
  }
  FrontState state{grid, sample_front(spec, grid), t};
  validate_state(state);
  return state;
}

}  // namespace sqgfront
