#include "maxmult/grid.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "fft.hpp"

namespace maxmult {

DyadicGrid::DyadicGrid(int length_log2, int samples_log2)
    : length_log2_(length_log2),
      samples_log2_(samples_log2),
      length_(std::ldexp(1.0, length_log2)),
      spacing_(std::ldexp(1.0, length_log2 - samples_log2)) {
  if (samples_log2 < 0 || samples_log2 > 28) {
    throw Error("DyadicGrid: samples_log2 must lie in [0, 28], got " + std::to_string(samples_log2));
  }
  if (length_log2 < -40 || length_log2 > 40) {
    throw Error("DyadicGrid: length_log2 out of range: " + std::to_string(length_log2));
  }
}

double DyadicGrid::frequency(std::size_t bin) const noexcept {
  const auto m = static_cast<std::int64_t>(size());
  auto j = static_cast<std::int64_t>(bin);
  if (j >= m / 2) j -= m;
  return std::ldexp(static_cast<double>(j), -length_log2_);
}

bool DyadicGrid::on_frequency_grid(double xi) const noexcept {
  const double scaled = std::ldexp(xi, length_log2_);
  return std::isfinite(scaled) && scaled == std::round(scaled);
}

std::size_t DyadicGrid::bin(double xi) const {
  if (!on_frequency_grid(xi)) throw Error("frequency is not on the DFT grid");
  if (xi < -nyquist() || xi >= nyquist()) throw Error("frequency outside the sampled band");
  auto j = static_cast<std::int64_t>(std::round(std::ldexp(xi, length_log2_)));
  if (j < 0) j += static_cast<std::int64_t>(size());
  return static_cast<std::size_t>(j);
}

Signal::Signal(const DyadicGrid& grid) : grid_(grid), values_(grid.size()) {}

Signal::Signal(const DyadicGrid& grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error("Signal: expected " + std::to_string(grid_.size()) + " samples, got " +
                std::to_string(values_.size()));
  }
}

double periodic_distance(double a, double b, double length) noexcept {
  double d = std::abs(a - b);
  if (d >= length) d = std::fmod(d, length);
  return std::min(d, length - d);
}

Signal dft(const Signal& f) {
  Signal out = f;
  detail::fft_inplace(out.values(), false);
  const double scale = 1.0 / std::sqrt(static_cast<double>(f.size()));
  for (auto& v : out.values()) v *= scale;
  return out;
}

Signal idft(const Signal& g) {
  Signal out = g;
  detail::fft_inplace(out.values(), true);
  const double scale = 1.0 / std::sqrt(static_cast<double>(g.size()));
  for (auto& v : out.values()) v *= scale;
  return out;
}

namespace {

template <class T>
Signal project_impl(const Signal& f, std::span<const T> multiplier) {
  if (multiplier.size() != f.size()) {
    throw Error("fourier_project: multiplier has " + std::to_string(multiplier.size()) +
                " samples, frequency grid has " + std::to_string(f.size()));
  }
  Signal spectrum = dft(f);
  auto values = spectrum.values();
  for (std::size_t j = 0; j < values.size(); ++j) values[j] *= multiplier[j];
  return idft(spectrum);
}

}  // namespace

Signal fourier_project(const Signal& f, std::span<const cplx> multiplier) {
  return project_impl(f, multiplier);
}

Signal fourier_project(const Signal& f, std::span<const double> multiplier) {
  return project_impl(f, multiplier);
}

double lp_norm(const Signal& f, double p) {
  if (!(p >= 1.0)) throw Error("lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double best = 0.0;
    for (const auto& v : f.values()) best = std::max(best, std::abs(v));
    return best;
  }
  double sum = 0.0;
  for (const auto& v : f.values()) sum += std::pow(std::abs(v), p);
  return std::pow(sum * f.grid().spacing(), 1.0 / p);
}

Signal martingale_avg(const Signal& f, int k) {
  const DyadicGrid& grid = f.grid();
  // 2^-k >= spacing and 2^-k <= length.
  if (-k < grid.spacing_log2() || -k > grid.length_log2()) {
    throw Error("martingale_avg: scale 2^-" + std::to_string(k) + " outside [spacing, length]");
  }
  const std::size_t block = std::size_t{1} << (-k - grid.spacing_log2());
  Signal out(grid);
  for (std::size_t start = 0; start < f.size(); start += block) {
    cplx sum{};
    for (std::size_t i = start; i < start + block; ++i) sum += f[i];
    const cplx mean = sum / static_cast<double>(block);
    for (std::size_t i = start; i < start + block; ++i) out[i] = mean;
  }
  return out;
}

Signal hl_maximal(const Signal& f) {
  const std::size_t m = f.size();
  Signal out(f.grid());
  if (m == 1) {
    out[0] = std::abs(f[0]);
    return out;
  }
  // prefix[i] = sum_{t < i} |f_t|, extended over three periods for wrap-around.
  std::vector<double> prefix(3 * m + 1, 0.0);
  for (std::size_t i = 0; i < 3 * m; ++i) prefix[i + 1] = prefix[i] + std::abs(f[i % m]);

  std::vector<double> best(m, 0.0);
  for (std::size_t radius = 1; 2 * radius <= m; radius <<= 1) {
    const double inv = 1.0 / static_cast<double>(2 * radius);
    for (std::size_t x = 0; x < m; ++x) {
      // samples x - radius .. x + radius - 1, shifted by m to stay nonnegative
      const std::size_t lo = x + m - radius;
      const double avg = (prefix[lo + 2 * radius] - prefix[lo]) * inv;
      best[x] = std::max(best[x], avg);
    }
  }
  for (std::size_t x = 0; x < m; ++x) out[x] = best[x];
  return out;
}

}  // namespace maxmult
