#pragma once

#include <utility>
#include <vector>

#include "maxmult/tiles.hpp"

namespace maxmult {

struct CountingLevel {
  int j = 0;
  std::vector<DyadicInterval> pieces;                 // maximal intervals shorter than 2^-j
  std::vector<std::pair<double, double>> components;  // connected components [lo, hi)
  std::vector<double> boundary;                       // component endpoints
};

/// The maximal dyadic I inside I_T whose tripled interval holds no I_s, and for each
/// j >= k(I_T) the union E_j of those shorter than 2^-j with its components.
/// Levels with E_j empty are omitted.
struct CountingSets {
  DyadicInterval top;
  std::vector<DyadicInterval> maximal;
  std::vector<CountingLevel> levels;

  const CountingLevel* level(int j) const noexcept;
};

/// Throws on an empty tree.
CountingSets counting_sets(const Tree& T);

/// Open interval (lo, hi) flanking a component at level j.
struct Flank {
  int j = 0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Left flanks (x_l - 2^{-j-1}, x_l - 2^{-j-2}) or right flanks (x_r + 2^{-j-2}, x_r + 2^{-j-1}).
std::vector<Flank> flanks(const CountingSets& sets, bool left);
/// Pairwise disjoint as open intervals.
bool flanks_disjoint(std::vector<Flank> list);

/// sum_j 2^-j #boundary(E_j) / |I_T|.
double counting_ratio(const CountingSets& sets);

inline constexpr double kMuCutoff = 1e-30;

/// mu_j(x) = sum_{j'} 2^{-|j'-j|/100} sum_{y in boundary(E_j')} (1 + 2^j' d(x, y))^{-100},
/// kernel terms (before the level weight) below 1e-30 dropped; d is the distance on the torus.
Signal mu_weight(const CountingSets& sets, int j, const DyadicGrid& grid);

/// W_T(x) = sum_s 1_{I_s}(x) / |I_s| * integral of mu_{k(s)} chi~_{I_s}^2. Zero for an empty tree.
Signal wt_function(const Tree& T, const DyadicGrid& grid);

/// max over dyadic J (down to one sample) of the mean of |f - avg_J f| on J.
double dyadic_bmo(const Signal& f);

/// max over dyadic J inside I, down to one sample, of the mean of |f| on J.
double local_average_bound(const Signal& f, const DyadicInterval& I);

}  // namespace maxmult
