#include "maxmult/multiplier.hpp"

#include <algorithm>
#include <numbers>

#include "bins.hpp"
#include "maxmult/rng.hpp"
#include "maxmult/variation.hpp"

namespace maxmult {

double cos2_profile(double t) noexcept {
  if (std::abs(t) > 0.5) return 0.0;
  const double c = std::cos(std::numbers::pi * t);
  return c * c;
}

double bump_amplitude(bool strict_adapted) noexcept {
  return strict_adapted ? 1.0 / std::numbers::pi : 1.0;
}

namespace {

void check_on_grid(const DyadicGrid& grid, const FrequencyInterval& omega) {
  if (!grid.on_frequency_grid(omega.center)) throw Error("bump: interval center is off the frequency grid");
  if (omega.scale_log2 < -grid.length_log2()) throw Error("bump: interval narrower than the frequency resolution");
}

}  // namespace

std::vector<double> canonical_bump(const DyadicGrid& grid, const FrequencyInterval& omega,
                                   bool strict_adapted) {
  check_on_grid(grid, omega);
  std::vector<double> m(grid.size(), 0.0);
  const double amp = bump_amplitude(strict_adapted);
  detail::for_each_bin(grid, omega.lo(), omega.hi(), [&](std::size_t bin, double xi) {
    m[bin] = amp * cos2_profile((xi - omega.center) / omega.length());
  });
  return m;
}

std::vector<double> indicator_bump(const DyadicGrid& grid, const FrequencyInterval& omega) {
  check_on_grid(grid, omega);
  std::vector<double> m(grid.size(), 0.0);
  detail::for_each_bin(grid, omega.lo(), omega.hi(), [&](std::size_t bin, double xi) {
    if (xi < omega.hi()) m[bin] = 1.0;
  });
  return m;
}

MultiplierFamily::MultiplierFamily(FrequencySystem system, BumpKind bump, bool strict_adapted)
    : MultiplierFamily(system, bump, strict_adapted,
                       std::vector<cplx>(system.scales().size() * system.size(), cplx(1.0))) {}

MultiplierFamily::MultiplierFamily(FrequencySystem system, BumpKind bump, bool strict_adapted,
                                   std::vector<cplx> weights)
    : system_(std::move(system)), bump_(bump), strict_(strict_adapted), weights_(std::move(weights)) {
  if (weights_.size() != system_.scales().size() * system_.size()) {
    throw Error("MultiplierFamily: expected one weight per (scale, frequency)");
  }
}

cplx MultiplierFamily::weight(int k, std::size_t n) const {
  if (n >= system_.size()) throw Error("MultiplierFamily: frequency index out of range");
  return weights_[system_.scale_index(k) * system_.size() + n];
}

double MultiplierFamily::profile(double t) const noexcept {
  if (bump_ == BumpKind::kIndicator) return (t >= -0.5 && t < 0.5) ? 1.0 : 0.0;
  return bump_amplitude(strict_) * cos2_profile(t);
}

double MultiplierFamily::bump_value(int k, std::size_t n, double xi) const {
  const FrequencyInterval omega = system_.interval(k, n);
  return profile((xi - omega.center) / omega.length());
}

std::vector<double> MultiplierFamily::bump(int k, std::size_t n) const {
  const FrequencyInterval omega = system_.interval(k, n);
  return bump_ == BumpKind::kIndicator ? indicator_bump(system_.grid(), omega)
                                       : canonical_bump(system_.grid(), omega, strict_);
}

std::vector<cplx> MultiplierFamily::scale_multiplier(int k) const {
  std::vector<cplx> total(system_.grid().size());
  for (std::size_t n = 0; n < system_.size(); ++n) {
    const FrequencyInterval omega = system_.interval(k, n);
    const cplx w = weight(k, n);
    // Intervals of one R_k are disjoint, so assignment equals summation.
    detail::for_each_bin(system_.grid(), omega.lo(), omega.hi(), [&](std::size_t bin, double xi) {
      total[bin] += w * profile((xi - omega.center) / omega.length());
    });
  }
  return total;
}

Signal delta_k(const Signal& f, const MultiplierFamily& family, int k) {
  if (!(f.grid() == family.system().grid())) throw Error("delta_k: signal and family grids differ");
  const auto m = family.scale_multiplier(k);
  return fourier_project(f, m);
}

Signal maximal_delta(const Signal& f, const MultiplierFamily& family) {
  if (!(f.grid() == family.system().grid())) throw Error("maximal_delta: signal and family grids differ");
  const Signal spectrum = dft(f);
  Signal out(f.grid());
  for (int k : family.system().scales()) {
    const auto m = family.scale_multiplier(k);
    Signal g = spectrum;
    for (std::size_t j = 0; j < g.size(); ++j) g[j] *= m[j];
    const Signal dk = idft(g);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = std::max(out[i].real(), std::abs(dk[i]));
    }
  }
  return out;
}

namespace {

template <class ValueFn>
double vstar(const MultiplierFamily& family, double r, ValueFn&& value) {
  const auto scales = family.system().scales();
  if (scales.empty()) throw Error("vstar: empty scale set");
  double best = 0.0;
  std::vector<cplx> seq(scales.size());
  for (std::size_t n = 0; n < family.system().size(); ++n) {
    for (std::size_t i = 0; i < scales.size(); ++i) seq[i] = value(scales[i], n);
    best = std::max(best, rvar_norm(std::span<const cplx>(seq), r));
  }
  return best;
}

}  // namespace

double vstar_norm_weights(const MultiplierFamily& family, double r) {
  return vstar(family, r, [&](int k, std::size_t n) { return family.weight(k, n); });
}

double vstar_norm_bumps(const MultiplierFamily& family, double r) {
  return vstar(family, r, [&](int k, std::size_t n) {
    return cplx(family.bump_value(k, n, family.system().lambda(n)));
  });
}

Signal band_project(const Signal& f, const FrequencySystem& system, std::size_t n) {
  if (n >= system.size()) throw Error("band_project: frequency index out of range");
  if (!(f.grid() == system.grid())) throw Error("band_project: grids differ");
  if (system.size() == 1) return f;
  const double radius = system.separation() / 10.0;
  const double center = system.lambda(n);
  std::vector<double> mask(f.size(), 0.0);
  for (std::size_t j = 0; j < mask.size(); ++j) {
    if (std::abs(f.grid().frequency(j) - center) < radius) mask[j] = 1.0;
  }
  return fourier_project(f, std::span<const double>(mask));
}

Signal sq_function(const Signal& f, const FrequencySystem& system) {
  std::vector<double> energy(f.size(), 0.0);
  for (std::size_t n = 0; n < system.size(); ++n) {
    const Signal fn = band_project(f, system, n);
    for (std::size_t i = 0; i < energy.size(); ++i) energy[i] += std::norm(fn[i]);
  }
  Signal out(f.grid());
  for (std::size_t i = 0; i < energy.size(); ++i) out[i] = std::sqrt(energy[i]);
  return out;
}

std::vector<cplx> random_unimodular_weights(const FrequencySystem& system, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<cplx> w(system.scales().size() * system.size());
  for (auto& v : w) v = rng.unimodular();
  return w;
}

}  // namespace maxmult
