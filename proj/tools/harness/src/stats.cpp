#include "maxmult/harness/stats.hpp"

#include <algorithm>
#include <cmath>

#include "maxmult/error.hpp"

namespace maxmult::harness {

SlopeFit fit_slope(std::span<const double> N, std::span<const double> values) {
  if (N.size() != values.size()) throw Error("fit_slope: size mismatch");
  if (N.size() < 2) throw Error("fit_slope: need at least two points");
  const auto n = static_cast<double>(N.size());
  std::vector<double> x, y;
  for (std::size_t i = 0; i < N.size(); ++i) {
    if (!(N[i] > 0.0) || !(values[i] > 0.0)) throw Error("fit_slope: nonpositive value");
    x.push_back(std::log(N[i]));
    y.push_back(std::log(values[i]));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error("fit_slope: all N equal");
  SlopeFit fit;
  fit.points = N.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (N.size() > 2) {
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = y[i] - fit.intercept - fit.slope * x[i];
      rss += e * e;
    }
    fit.stderr_slope = std::sqrt(rss / (n - 2.0) / sxx);
  }
  return fit;
}

double max_of(std::span<const double> v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

}  // namespace maxmult::harness
