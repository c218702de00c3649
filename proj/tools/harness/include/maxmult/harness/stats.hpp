#pragma once

#include <span>
#include <vector>

namespace maxmult::harness {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;  // zero for two points or an exact fit
  std::size_t points = 0;
};

/// Ordinary least squares of log(value) on log(N). Needs at least two points,
/// two distinct N and positive values.
SlopeFit fit_slope(std::span<const double> N, std::span<const double> values);

double max_of(std::span<const double> v);

}  // namespace maxmult::harness
