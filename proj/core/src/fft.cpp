#include "fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace maxmult::detail {
namespace {

using cplx = std::complex<double>;

// exp(-2 pi i j / M) for j < M/2, one table per size.
const std::vector<cplx>& twiddles(std::size_t size) {
  thread_local std::vector<std::vector<cplx>> cache(64);
  const auto log2 = static_cast<std::size_t>(std::countr_zero(size));
  auto& table = cache[log2];
  if (table.size() != size / 2) {
    table.resize(size / 2);
    for (std::size_t j = 0; j < size / 2; ++j) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(size);
      table[j] = cplx(std::cos(angle), std::sin(angle));
    }
  }
  return table;
}

// Plain product; std::complex operator* goes through the Annex G NaN path.
inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace

void fft_inplace(std::span<cplx> data, bool inverse) {
  const std::size_t n = data.size();
  if (n <= 1) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  const auto& table = twiddles(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx w = inverse ? std::conj(table[k * stride]) : table[k * stride];
        const cplx u = data[start + k];
        const cplx v = mul(data[start + k + half], w);
        data[start + k] = u + v;
        data[start + k + half] = u - v;
      }
    }
  }
}

}  // namespace maxmult::detail
