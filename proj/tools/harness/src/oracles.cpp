#include "maxmult/harness/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "maxmult/error.hpp"

namespace maxmult::harness {
namespace {

double dist(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

double brute_rvar_seminorm(const std::vector<std::vector<cplx>>& values, double r) {
  const std::size_t m = values.size();
  if (m == 0 || m > 20) throw Error("brute_rvar_seminorm: need 1..20 entries");
  // pairwise increments raised to r, then every subset summed directly
  std::vector<double> inc(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) inc[i * m + j] = std::pow(dist(values[i], values[j]), r);
  double best = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    double total = 0.0;
    int prev = -1;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask >> i & 1u)) continue;
      if (prev >= 0) total += inc[static_cast<std::size_t>(prev) * m + i];
      prev = static_cast<int>(i);
    }
    best = std::max(best, total);
  }
  return std::pow(best, 1.0 / r);
}

double brute_rvar_norm(const std::vector<std::vector<cplx>>& values, double r) {
  double sup = 0.0;
  const std::vector<cplx> zero(values.empty() ? 0 : values[0].size());
  for (const auto& v : values) sup = std::max(sup, dist(v, zero));
  return sup + brute_rvar_seminorm(values, r);
}

}  // namespace maxmult::harness
