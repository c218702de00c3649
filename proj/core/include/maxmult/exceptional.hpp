#pragma once

#include <vector>

#include "maxmult/tiles.hpp"
#include "maxmult/windows.hpp"

namespace maxmult {

struct ExceptionalOptions {
  double lambda = 0.25;  // must lie in (0, 1)
  double epsilon = 0.1;
  double p = 1.5;
  double r = 2.5;
  /// E = {M 1_F >= C lambda}. C = 1/8 makes size(S') <= lambda/2 follow from a
  /// maximal-function size bound with constant 4.
  double threshold_constant = 0.125;
};

struct TreeException {
  int m = 0;
  Tile top;
  double threshold = 0.0;  // lambda^{1/2 - eps} 2^{-m/2}
  double measure = 0.0;    // |E_T|
};

struct ExceptionalReport {
  double measure_F = 0.0;
  double measure_E = 0.0;
  double bound_E = 0.0;  // 2 C^{-p} |F| / lambda^p
  bool E_bound_ok = true;

  std::size_t tiles_in = 0;
  std::size_t tiles_kept = 0;  // tiles whose I_s is not inside E
  double size_kept = 0.0;      // size(S') relative to 1_F
  bool size_halved = true;     // size(S') <= lambda / 2

  Decomposition decomposition;
  std::vector<TreeException> trees;
  double measure_E_prime = 0.0;
  double measure_union = 0.0;

  double bound_value = 0.0;  // lambda^{1-eps} N^{1/2}
  double max_off_exceptional = 0.0;
  std::size_t samples_checked = 0;
  std::size_t violations = 0;

  bool tops_unique = true;       // at most one stratum tree per n over each x
  double identity_error = 0.0;   // max |V_{S_m} - (sum_n V_{T_{n,m}}^2)^{1/2}|

  bool pointwise_ok() const noexcept { return violations == 0; }
};

/// Exceptional-set bookkeeping for f = 1_F against a tile set S: builds E, S', the
/// decomposition of S', the tree sets E_T, and checks V_{S'} 1_F off E and E'.
/// Throws if lambda is not in (0, 1) or indicator is not 0/1 valued.
ExceptionalReport exceptional_sets(const TileSet& S, const Signal& indicator, const FrequencySystem& system,
                                   const WindowSystem& windows, const ExceptionalOptions& options);

}  // namespace maxmult
