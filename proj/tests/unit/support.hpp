#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "maxmult/grid.hpp"
#include "maxmult/rng.hpp"

namespace maxmult::test {

inline Signal noise(const DyadicGrid& grid, CounterRng& rng) {
  Signal f(grid);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = rng.complex_normal();
  return f;
}

inline double l2_distance(const Signal& a, const Signal& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s * a.grid().spacing());
}

inline double max_abs_diff(const Signal& a, const Signal& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const Signal& a) {
  double m = 0.0;
  for (const auto& v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

// Energy of the unitary DFT restricted to the bins where keep(freq) holds.
template <class Pred>
double band_energy(const Signal& f, Pred keep) {
  const Signal F = dft(f);
  double s = 0.0;
  for (std::size_t j = 0; j < F.size(); ++j)
    if (keep(f.grid().frequency(j))) s += std::norm(F[j]);
  return s * f.grid().spacing();
}

}  // namespace maxmult::test
