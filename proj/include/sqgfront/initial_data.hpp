#pragma once

// Named analytic families of initial fronts.

#include <string>
#include <string_view>
#include <vector>

#include "sqgfront/grid_spectral.hpp"

namespace sqgfront {

enum class FrontFamily {
  flat,             // offset
  gaussian,         // offset + a exp(-((x-c)/w)^2)
  poly_bump,        // offset + a (1 - ((x-c)/w)^2)^p on |x-c| < w
  windowed_cosine,  // offset + a W(x) cos(k (x-c) + phase)
  mode,             // offset + a cos(k x + phase), periodic grids
  random_bump,      // offset + gaussian envelope times random cosines
};

struct FrontSpec {
  FrontFamily family = FrontFamily::flat;
  double amplitude = 0.0;
  double width = 1.0;
  double center = 0.0;
  double offset = 0.0;
  double wavenumber = 1.0;
  double phase = 0.0;
  /// windowed_cosine: W = 1 on |x-c| <= plateau, smooth taper to 0 over taper.
  double plateau = 10.0;
  double taper = 10.0;
  int power = 6;
  int modes = 4;
  unsigned seed = 1;
};

std::string_view family_name(FrontFamily family);
/// Throws InvalidArgument for unknown names.
FrontFamily parse_family(std::string_view name);

double front_value(const FrontSpec& spec, double x);
/// Analytic x-derivative of front_value.
double front_slope(const FrontSpec& spec, double x);

std::vector<double> sample_front(const FrontSpec& spec, const LineGrid& grid);
std::vector<double> sample_slope(const FrontSpec& spec, const LineGrid& grid);

FrontState make_state(const FrontSpec& spec, const LineGrid& grid,
                      double t = 0.0);

}  // namespace sqgfront
