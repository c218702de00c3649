#pragma once

#include <cmath>
#include <cstdint>

#include "maxmult/grid.hpp"

namespace maxmult::detail {

// Calls fn(bin, xi) for every grid frequency xi in the closed [lo, hi].
// Frequencies are taken modulo the sampling rate.
template <class Fn>
void for_each_bin(const DyadicGrid& grid, double lo, double hi, Fn&& fn) {
  const auto first = static_cast<std::int64_t>(std::ceil(std::ldexp(lo, grid.length_log2())));
  const auto last = static_cast<std::int64_t>(std::floor(std::ldexp(hi, grid.length_log2())));
  const auto m = static_cast<std::int64_t>(grid.size());
  for (std::int64_t j = first; j <= last; ++j) {
    const std::int64_t bin = ((j % m) + m) % m;
    fn(static_cast<std::size_t>(bin), std::ldexp(static_cast<double>(j), -grid.length_log2()));
  }
}

}  // namespace maxmult::detail
