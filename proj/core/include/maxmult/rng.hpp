#pragma once

#include <complex>
#include <cstdint>
#include <limits>

namespace maxmult {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Counter-based generator: draw i of stream `key` is mix64(key + (i+1) * golden).
///
/// Every derived value (uniform, normal, sign) is computed here from raw
/// 64-bit draws, so identical keys give bit-identical streams on any
/// platform. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;
  static constexpr const char* kAlgorithm = "splitmix64-counter";

  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return at(counter_++); }
  result_type at(std::uint64_t counter) const noexcept;

  /// Independent stream keyed by (this key, tag).
  CounterRng substream(std::uint64_t tag) const noexcept;

  double uniform() noexcept;  // [0, 1), 53 bits
  double normal() noexcept;   // Box-Muller, two draws per call
  double sign() noexcept;     // +-1
  std::uint64_t below(std::uint64_t n) noexcept;  // [0, n), n > 0
  std::complex<double> unimodular() noexcept;
  std::complex<double> complex_normal() noexcept;  // E|z|^2 = 1

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace maxmult
