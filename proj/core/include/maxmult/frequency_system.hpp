#pragma once

#include <span>
#include <vector>

#include "maxmult/grid.hpp"

namespace maxmult {

/// Closed interval of length 2^scale_log2 centered at `center`.
struct FrequencyInterval {
  double center = 0.0;
  int scale_log2 = 0;

  double length() const noexcept { return std::ldexp(1.0, scale_log2); }
  double lo() const noexcept { return center - 0.5 * length(); }
  double hi() const noexcept { return center + 0.5 * length(); }
};

struct SystemOptions {
  /// Largest admissible scale when N == 1 (D is then +infinity).
  int single_frequency_scale_cap = -7;
};

/// The frequency set Lambda on a grid, its separation D and the admissible
/// scales k (2^k < D/100, 2^-k no longer than the torus, 10 omega inside the band).
class FrequencySystem {
 public:
  FrequencySystem(const DyadicGrid& grid, std::vector<double> lambdas, SystemOptions options = {});

  const DyadicGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return lambdas_.size(); }
  std::span<const double> lambdas() const noexcept { return lambdas_; }
  double lambda(std::size_t n) const { return lambdas_.at(n); }

  /// Minimum pairwise gap, +infinity for a single frequency.
  double separation() const noexcept { return separation_; }

  /// Admissible scales, ascending.
  std::span<const int> scales() const noexcept { return scales_; }
  bool admissible(int k) const noexcept;
  std::size_t scale_index(int k) const;

  /// The interval of R_k centered at lambda_n.
  FrequencyInterval interval(int k, std::size_t n) const;

  /// Rescaled copy with D = 1: frequencies divided by D, torus length multiplied
  /// by D, sample count unchanged. D must be a power of two.
  FrequencySystem normalized() const;

 private:
  DyadicGrid grid_;
  std::vector<double> lambdas_;
  double separation_;
  std::vector<int> scales_;
  SystemOptions options_;
};

/// Brute-force-free minimum gap of a sorted or unsorted list.
double min_separation(std::span<const double> lambdas);

}  // namespace maxmult
