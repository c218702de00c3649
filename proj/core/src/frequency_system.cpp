#include "maxmult/frequency_system.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace maxmult {

double min_separation(std::span<const double> lambdas) {
  if (lambdas.size() < 2) return std::numeric_limits<double>::infinity();
  std::vector<double> sorted(lambdas.begin(), lambdas.end());
  std::sort(sorted.begin(), sorted.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) gap = std::min(gap, sorted[i] - sorted[i - 1]);
  return gap;
}

FrequencySystem::FrequencySystem(const DyadicGrid& grid, std::vector<double> lambdas,
                                 SystemOptions options)
    : grid_(grid), lambdas_(std::move(lambdas)), options_(options) {
  if (lambdas_.empty()) throw Error("FrequencySystem: need at least one frequency");
  std::sort(lambdas_.begin(), lambdas_.end());
  for (std::size_t i = 1; i < lambdas_.size(); ++i) {
    if (lambdas_[i] == lambdas_[i - 1]) throw Error("FrequencySystem: duplicate frequency");
  }
  for (double l : lambdas_) {
    if (!grid_.on_frequency_grid(l)) throw Error("FrequencySystem: frequency off the DFT grid");
  }
  separation_ = min_separation(lambdas_);

  const double lowest = lambdas_.front();
  const double highest = lambdas_.back();
  for (int k = -grid_.length_log2(); k <= 40; ++k) {
    const double width = std::ldexp(1.0, k);
    if (size() == 1) {
      if (k > options_.single_frequency_scale_cap) break;
    } else if (!(width < 1e-2 * separation_)) {
      break;
    }
    // 10 omega must sit strictly inside the sampled band.
    if (lowest - 5.0 * width <= -grid_.nyquist() || highest + 5.0 * width >= grid_.nyquist()) break;
    scales_.push_back(k);
  }
  if (scales_.empty()) {
    throw Error("FrequencySystem: no admissible scale (grid too coarse for 10^-2 D)");
  }
}

bool FrequencySystem::admissible(int k) const noexcept {
  return std::binary_search(scales_.begin(), scales_.end(), k);
}

std::size_t FrequencySystem::scale_index(int k) const {
  auto it = std::lower_bound(scales_.begin(), scales_.end(), k);
  if (it == scales_.end() || *it != k) throw Error("scale " + std::to_string(k) + " is not admissible");
  return static_cast<std::size_t>(it - scales_.begin());
}

FrequencyInterval FrequencySystem::interval(int k, std::size_t n) const {
  if (!admissible(k)) throw Error("scale " + std::to_string(k) + " is not admissible");
  return {lambda(n), k};
}

FrequencySystem FrequencySystem::normalized() const {
  if (size() == 1) return *this;
  int d_log2 = 0;
  const double mant = std::frexp(separation_, &d_log2);
  if (mant != 0.5) throw Error("normalized: separation is not a power of two");
  d_log2 -= 1;
  DyadicGrid grid(grid_.length_log2() + d_log2, grid_.samples_log2());
  std::vector<double> scaled(lambdas_);
  for (auto& l : scaled) l = std::ldexp(l, -d_log2);
  return FrequencySystem(grid, std::move(scaled), options_);
}

}  // namespace maxmult
