#include "maxmult/rng.hpp"

#include <cmath>
#include <numbers>

namespace maxmult {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
__extension__ using u128 = unsigned __int128;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CounterRng::result_type CounterRng::at(std::uint64_t counter) const noexcept {
  return mix64(key_ + (counter + 1) * kGolden);
}

CounterRng CounterRng::substream(std::uint64_t tag) const noexcept {
  return CounterRng(mix64(key_ ^ mix64(tag + kGolden)));
}

double CounterRng::uniform() noexcept {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() noexcept {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double CounterRng::sign() noexcept { return ((*this)() >> 63) ? 1.0 : -1.0; }

std::uint64_t CounterRng::below(std::uint64_t n) noexcept {
  // Lemire's multiply-shift; the tiny bias is irrelevant for test generation.
  return static_cast<std::uint64_t>((static_cast<u128>((*this)()) * n) >> 64);
}

std::complex<double> CounterRng::unimodular() noexcept {
  return std::polar(1.0, 2.0 * std::numbers::pi * uniform());
}

std::complex<double> CounterRng::complex_normal() noexcept {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

}  // namespace maxmult
