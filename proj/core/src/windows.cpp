#include "maxmult/windows.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "bins.hpp"
#include "maxmult/variation.hpp"

namespace maxmult {

namespace {

// a cos^4(pi t) has max slope 4 pi a (3/4)^{3/2} / 2; pick a so the slope is 1.
const double kSquaredBumpAmplitude = 1.0 / (2.0 * std::numbers::pi * std::pow(0.75, 1.5));

cplx expi(double phase) { return std::polar(1.0, 2.0 * std::numbers::pi * phase); }

}  // namespace

WindowSystem::WindowSystem(WindowShape shape, bool strict_adapted) : shape_(shape), strict_(strict_adapted) {}

double WindowSystem::profile(double t) const noexcept {
  const double c2 = cos2_profile(t);
  if (shape_ == WindowShape::kSquaredBump) return kSquaredBumpAmplitude * c2 * c2;
  return bump_amplitude(strict_) * c2;
}

double WindowSystem::center_variation(double r, std::size_t num_scales) const {
  std::vector<cplx> seq(num_scales, cplx(center_value()));
  return rvar_norm(std::span<const cplx>(seq), r);
}

double WindowSystem::cutoff(double t) noexcept {
  const double a = std::abs(t);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  const double c = std::cos(std::numbers::pi * (a - 0.5));
  return c * c;
}

std::vector<cplx> physical_spectrum(const Signal& f) {
  const Signal s = dft(f);
  const double scale = f.grid().spacing() * std::sqrt(static_cast<double>(f.size()));
  std::vector<cplx> out(s.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = scale * s[j];
  return out;
}

cplx window_coeff_at(std::span<const cplx> spectrum, const DyadicGrid& grid,
                     const std::function<double(double)>& profile, int k, double lambda, double center) {
  if (spectrum.size() != grid.size()) throw Error("window_coeff: spectrum size does not match the grid");
  const double width = std::ldexp(1.0, k);
  const double len = std::ldexp(1.0, -k);
  cplx acc = 0.0;
  detail::for_each_bin(grid, lambda - 0.5 * width, lambda + 0.5 * width, [&](std::size_t bin, double xi) {
    const double m = profile((xi - lambda) * len);
    if (m != 0.0) acc += spectrum[bin] * m * expi((xi - lambda) * center);
  });
  return acc / grid.length();
}

cplx window_coeff(const Signal& f, const DyadicInterval& I, const FrequencySystem& system, std::size_t n,
                  const WindowSystem& windows) {
  if (!(f.grid() == system.grid())) throw Error("window_coeff: grids differ");
  if (!system.admissible(I.k)) throw Error("window_coeff: interval length does not match an admissible scale");
  const auto spectrum = physical_spectrum(f);
  return window_coeff_at(spectrum, f.grid(), [&](double t) { return windows.profile(t); }, I.k,
                         system.lambda(n), I.center());
}

std::vector<cplx> scale_coefficients(const Signal& f, const std::function<double(double)>& profile, int k,
                                     double lambda) {
  const DyadicGrid& grid = f.grid();
  // Centers (i + 1/2) 2^-k land on the grid when 2^-k-1 >= spacing.
  if (-k - 1 < grid.spacing_log2()) throw Error("scale_coefficients: interval centers fall between samples");
  if (-k > grid.length_log2()) throw Error("scale_coefficients: interval longer than the torus");
  std::vector<double> mult(grid.size(), 0.0);
  const double width = std::ldexp(1.0, k);
  detail::for_each_bin(grid, lambda - 0.5 * width, lambda + 0.5 * width, [&](std::size_t bin, double xi) {
    mult[bin] = profile((xi - lambda) / width);
  });
  const Signal g = fourier_project(f, std::span<const double>(mult));
  const auto count = static_cast<std::size_t>(std::ldexp(1.0, grid.length_log2() + k));
  const std::size_t stride = grid.size() / count;
  std::vector<cplx> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t m = i * stride + stride / 2;
    out[i] = g[m] * expi(-lambda * grid.position(m));
  }
  return out;
}

LocalCoefficients::LocalCoefficients(const Signal& f, const FrequencySystem& system, const WindowSystem& windows)
    : system_(system) {
  if (!(f.grid() == system.grid())) throw Error("LocalCoefficients: grids differ");
  const auto profile = [&](double t) { return windows.profile(t); };
  for (int k : system_.scales()) {
    for (std::size_t n = 0; n < system_.size(); ++n) {
      rows_.push_back(scale_coefficients(f, profile, k, system_.lambda(n)));
    }
  }
}

std::size_t LocalCoefficients::count(int k) const {
  return rows_[system_.scale_index(k) * system_.size()].size();
}

std::span<const cplx> LocalCoefficients::row(int k, std::size_t n) const {
  if (n >= system_.size()) throw Error("LocalCoefficients: frequency index out of range");
  return rows_[system_.scale_index(k) * system_.size() + n];
}

cplx LocalCoefficients::at(int k, std::size_t n, std::int64_t index) const {
  const auto r = row(k, n);
  const auto c = static_cast<std::int64_t>(r.size());
  return r[static_cast<std::size_t>(((index % c) + c) % c)];
}

void write_coefficients_csv(std::ostream& out, const LocalCoefficients& coeffs) {
  out << "k,n,I_index,re,im\n";
  const auto old = out.precision(17);
  for (int k : coeffs.system().scales()) {
    for (std::size_t n = 0; n < coeffs.system().size(); ++n) {
      const auto r = coeffs.row(k, n);
      for (std::size_t i = 0; i < r.size(); ++i) {
        out << k << ',' << n << ',' << i << ',' << r[i].real() << ',' << r[i].imag() << '\n';
      }
    }
  }
  out.precision(old);
}

Signal windowed_expand(const Signal& f, const FrequencyInterval& omega,
                       const std::function<double(double)>& profile, int oversample_log2) {
  const DyadicGrid& grid = f.grid();
  if (!grid.on_frequency_grid(omega.center)) throw Error("windowed_expand: omega is not centered on a grid frequency");
  if (oversample_log2 < 0) throw Error("windowed_expand: negative oversampling");
  const int k = omega.scale_log2;
  const double width = omega.length();
  const double lambda = omega.center;
  if (lambda - width <= -grid.nyquist() || lambda + width > grid.nyquist()) {
    throw Error("windowed_expand: cutoff band leaves the sampled frequencies");
  }
  const int step_log2 = -k - oversample_log2;
  if (step_log2 > grid.length_log2()) throw Error("windowed_expand: translate step longer than the torus");
  const double h = std::ldexp(1.0, step_log2);
  const auto count = static_cast<std::size_t>(std::ldexp(1.0, grid.length_log2() - step_log2));

  const auto spectrum = physical_spectrum(f);
  std::vector<cplx> a(count);
  for (std::size_t i = 0; i < count; ++i) {
    a[i] = window_coeff_at(spectrum, grid, profile, k, lambda, (static_cast<double>(i) + 0.5) * h);
  }

  // Spectrum of sum_i e^{2 pi i lambda x} a_i h Psi(x - c_i), read off bin by bin.
  Signal g(grid);
  const double root_m = std::sqrt(static_cast<double>(grid.size()));
  detail::for_each_bin(grid, lambda - width, lambda + width, [&](std::size_t bin, double xi) {
    const double cut = WindowSystem::cutoff((xi - lambda) / width);
    if (cut == 0.0) return;
    cplx acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += a[i] * expi(-(xi - lambda) * (static_cast<double>(i) + 0.5) * h);
    g[bin] += root_m * cut * h / grid.length() * acc;
  });
  return idft(g);
}

Signal windowed_expand(const Signal& f, const MultiplierFamily& family, int k, std::size_t n,
                       int oversample_log2) {
  if (!(f.grid() == family.system().grid())) throw Error("windowed_expand: grids differ");
  return windowed_expand(f, family.system().interval(k, n), [&](double t) { return family.profile(t); },
                         oversample_log2);
}

}  // namespace maxmult
