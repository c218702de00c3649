#pragma once

#include <cmath>
#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "maxmult/error.hpp"

namespace maxmult {

using cplx = std::complex<double>;

/// Periodic torus [0, length) sampled at 2^samples_log2 equispaced points.
///
/// Both the length and the sample spacing are powers of two, so every dyadic
/// interval coarser than the spacing is a union of whole samples. The DFT
/// frequency grid has resolution 1/length and covers [-nyquist, nyquist).
class DyadicGrid {
 public:
  DyadicGrid(int length_log2, int samples_log2);

  int length_log2() const noexcept { return length_log2_; }
  int samples_log2() const noexcept { return samples_log2_; }
  int spacing_log2() const noexcept { return length_log2_ - samples_log2_; }

  std::size_t size() const noexcept { return std::size_t{1} << samples_log2_; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return spacing_; }
  double position(std::size_t i) const noexcept { return static_cast<double>(i) * spacing(); }

  double frequency_resolution() const noexcept { return std::ldexp(1.0, -length_log2_); }
  double nyquist() const noexcept { return 0.5 * static_cast<double>(size()) * frequency_resolution(); }

  /// Signed frequency of DFT bin j: j/length below M/2, (j - M)/length above.
  double frequency(std::size_t bin) const noexcept;
  bool on_frequency_grid(double xi) const noexcept;
  /// DFT bin of an on-grid frequency in [-nyquist, nyquist).
  std::size_t bin(double xi) const;

  bool operator==(const DyadicGrid&) const = default;

 private:
  int length_log2_;
  int samples_log2_;
  double length_;
  double spacing_;
};

/// Complex samples on a DyadicGrid. Frequency-domain data (the output of dft)
/// uses the same type, indexed by DFT bin.
class Signal {
 public:
  explicit Signal(const DyadicGrid& grid);
  Signal(const DyadicGrid& grid, std::vector<cplx> values);

  template <class Fn>
  static Signal sample(const DyadicGrid& grid, Fn&& fn) {
    Signal s(grid);
    for (std::size_t i = 0; i < s.size(); ++i) s.values_[i] = fn(grid.position(i));
    return s;
  }

  const DyadicGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> values() noexcept { return values_; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }
  cplx& operator[](std::size_t i) { return values_[i]; }

 private:
  DyadicGrid grid_;
  std::vector<cplx> values_;
};

/// I = [index 2^-k, (index+1) 2^-k).
struct DyadicInterval {
  int k = 0;
  std::int64_t index = 0;

  double length() const noexcept { return std::ldexp(1.0, -k); }
  double start() const noexcept { return std::ldexp(static_cast<double>(index), -k); }
  double end() const noexcept { return std::ldexp(static_cast<double>(index + 1), -k); }
  double center() const noexcept { return std::ldexp(static_cast<double>(index) + 0.5, -k); }

  DyadicInterval parent() const noexcept { return {k - 1, index >> 1}; }
  DyadicInterval child(int which) const noexcept { return {k + 1, 2 * index + which}; }

  /// True when other is a subset of this interval.
  bool contains(const DyadicInterval& other) const noexcept {
    return other.k >= k && (other.index >> (other.k - k)) == index;
  }
  bool intersects(const DyadicInterval& other) const noexcept {
    return contains(other) || other.contains(*this);
  }

  /// I(x, k): the interval of length 2^-k whose half-open span holds x.
  static DyadicInterval containing(double x, int k) noexcept {
    return {k, static_cast<std::int64_t>(std::floor(std::ldexp(x, k)))};
  }

  auto operator<=>(const DyadicInterval&) const = default;
};

/// Distance on the circle of circumference `length`.
double periodic_distance(double a, double b, double length) noexcept;

/// Unitary DFT: F_j = M^{-1/2} sum_m f_m exp(-2 pi i j m / M).
Signal dft(const Signal& f);
Signal idft(const Signal& g);

/// idft(m . dft(f)) with m sampled on the DFT bins.
Signal fourier_project(const Signal& f, std::span<const cplx> multiplier);
Signal fourier_project(const Signal& f, std::span<const double> multiplier);

/// Left-endpoint Riemann sum (sum |f|^p spacing)^{1/p}; p = infinity gives max |f|.
double lp_norm(const Signal& f, double p);

/// E_k f: mean of f over each dyadic interval of length 2^-k.
Signal martingale_avg(const Signal& f, int k);

/// Centered Hardy-Littlewood maximal function over dyadic radii
/// rho = spacing * 2^i <= length / 2. The window at x is the half-open
/// [x - rho, x + rho) with periodic wrap; it always holds I(x, k) for 2^-k = rho.
Signal hl_maximal(const Signal& f);

}  // namespace maxmult
