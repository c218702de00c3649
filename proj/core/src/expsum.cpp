#include "maxmult/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace maxmult {

namespace {

cplx expi(double phase) { return std::polar(1.0, 2.0 * std::numbers::pi * phase); }

// Index of the dyadic interval of length 2^-k holding grid point m.
std::int64_t interval_index(const DyadicGrid& grid, std::size_t m, int k) {
  return static_cast<std::int64_t>(std::floor(std::ldexp(grid.position(m), k)));
}

double lp_on(std::span<const double> values, double spacing, double p) {
  if (std::isinf(p)) return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
  double acc = 0.0;
  for (double v : values) acc += std::pow(v, p);
  return std::pow(acc * spacing, 1.0 / p);
}

void require_unit_separation(const FrequencySystem& system, const char* who) {
  if (system.size() > 1 && system.separation() != 1.0) {
    throw Error(std::string(who) + ": frequencies must be normalized to separation 1");
  }
}

}  // namespace

double max_exp_sum(const VarSequence& coeffs, std::span<const double> lambdas, int oversample) {
  if (coeffs.empty()) throw Error("max_exp_sum: empty coefficient sequence");
  if (coeffs.dim() != lambdas.size()) throw Error("max_exp_sum: coefficient dimension differs from N");
  if (oversample < 1) throw Error("max_exp_sum: oversample must be positive");
  if (lambdas.size() > 1 && std::abs(min_separation(lambdas) - 1.0) > 1e-12) {
    throw Error("max_exp_sum: frequencies must be normalized to separation 1");
  }
  double reach = 0.0;
  for (double l : lambdas) reach = std::max(reach, std::abs(l));
  const auto samples = static_cast<std::size_t>(oversample) * static_cast<std::size_t>(std::max(1.0, std::ceil(reach)));

  const std::size_t n_freq = lambdas.size();
  std::vector<cplx> phases(n_freq);
  double acc = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double y = static_cast<double>(s) / static_cast<double>(samples);
    for (std::size_t n = 0; n < n_freq; ++n) phases[n] = expi(lambdas[n] * y);
    double best = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const auto c = coeffs.at(k);
      cplx sum = 0.0;
      for (std::size_t n = 0; n < n_freq; ++n) sum += c[n] * phases[n];
      best = std::max(best, std::norm(sum));
    }
    acc += best;
  }
  return std::sqrt(acc / static_cast<double>(samples));
}

Signal variation_square_operator(const Signal& f, const FrequencySystem& system, const WindowSystem& windows,
                                 double r) {
  if (!(r > 2.0)) throw Error("variation_square_operator: r must exceed 2");
  const LocalCoefficients coeffs(f, system, windows);
  const auto scales = system.scales();
  const DyadicGrid& grid = f.grid();

  // Vf is constant on the intervals of the finest admissible scale.
  const int finest = scales.back();
  const std::size_t cells = coeffs.count(finest);
  std::vector<double> cell_value(cells, 0.0);
  std::vector<cplx> seq(scales.size());
  for (std::size_t cell = 0; cell < cells; ++cell) {
    double energy = 0.0;
    for (std::size_t n = 0; n < system.size(); ++n) {
      for (std::size_t i = 0; i < scales.size(); ++i) {
        const auto idx = static_cast<std::int64_t>(cell) >> (finest - scales[i]);
        seq[i] = coeffs.at(scales[i], n, idx);
      }
      const double v = rvar_norm(std::span<const cplx>(seq), r);
      energy += v * v;
    }
    cell_value[cell] = std::sqrt(energy);
  }
  Signal out(grid);
  for (std::size_t m = 0; m < out.size(); ++m) {
    out[m] = cell_value[static_cast<std::size_t>(interval_index(grid, m, finest))];
  }
  return out;
}

LocalReduction local_reduce(const Signal& f, const MultiplierFamily& family, const WindowSystem& windows,
                            const DyadicInterval& J, double r, double p) {
  const FrequencySystem& system = family.system();
  require_unit_separation(system, "local_reduce");
  if (J.k != 0) throw Error("local_reduce: J must be a dyadic interval of unit length");
  const DyadicGrid& grid = f.grid();
  if (J.index < 0 || J.end() > grid.length()) throw Error("local_reduce: J lies outside the torus");
  if (!(r > 2.0) || !(p >= 1.0)) throw Error("local_reduce: need r > 2 and p >= 1");
  if (grid.spacing_log2() > 0) throw Error("local_reduce: grid does not resolve unit intervals");

  const LocalCoefficients coeffs(f, system, windows);
  const auto scales = system.scales();
  const std::size_t n_freq = system.size();
  const auto first = static_cast<std::size_t>(J.index) << (-grid.spacing_log2());
  const std::size_t count = std::size_t{1} << (-grid.spacing_log2());

  LocalReduction out;
  const Signal sup_delta = maximal_delta(f, family);
  std::vector<double> vals(count);
  for (std::size_t i = 0; i < count; ++i) vals[i] = sup_delta[first + i].real();
  out.lhs = lp_on(vals, grid.spacing(), p);

  // Shift-l exponential sum on J: coefficients of I(J,k) moved by -l.
  auto expsum = [&](int l) {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double x = grid.position(first + i);
      double best = 0.0;
      for (int k : scales) {
        const std::int64_t idx = DyadicInterval::containing(J.start(), k).index - l;
        cplx sum = 0.0;
        for (std::size_t n = 0; n < n_freq; ++n) {
          sum += expi(system.lambda(n) * x) * coeffs.at(k, n, idx) * family.weight(k, n);
        }
        best = std::max(best, std::abs(sum));
      }
      v[i] = best;
    }
    return v;
  };
  const auto e0 = expsum(0);
  out.expsum_lp = lp_on(e0, grid.spacing(), p);
  out.expsum_l2 = lp_on(e0, grid.spacing(), 2.0);
  for (int l = 1; l <= kShiftCap; ++l) {
    const double decay = std::ldexp(1.0, -100 * l);
    out.tail += decay * (lp_on(expsum(l), grid.spacing(), p) + lp_on(expsum(-l), grid.spacing(), p));
  }

  double energy = 0.0;
  std::vector<cplx> seq(scales.size());
  for (std::size_t n = 0; n < n_freq; ++n) {
    for (std::size_t i = 0; i < scales.size(); ++i) {
      seq[i] = coeffs.at(DyadicInterval::containing(J.start(), scales[i]), n);
    }
    const double v = rvar_norm(std::span<const cplx>(seq), r);
    energy += v * v;
  }
  out.v_local = std::sqrt(energy);
  out.rhs = std::pow(static_cast<double>(n_freq), 0.5 - 1.0 / r) * vstar_norm_weights(family, r) * out.v_local;
  return out;
}

MartingaleReport martingale_variation_check(const Signal& f, const WindowSystem& windows, double r, double p) {
  if (!(r > 2.0)) throw Error("martingale_variation_check: r must exceed 2");
  if (!(p > 1.0) || std::isinf(p)) throw Error("martingale_variation_check: need 1 < p < infinity");
  const DyadicGrid& grid = f.grid();
  const int k_lo = -grid.length_log2();
  const int k_win = -grid.spacing_log2() - 1;
  const int k_mart = -grid.spacing_log2();
  if (k_win < k_lo) throw Error("martingale_variation_check: grid too coarse");

  MartingaleReport rep;
  rep.scales = k_win - k_lo + 1;
  rep.f_norm = lp_norm(f, p);

  const auto profile = [&](double t) { return windows.profile(t); };
  std::vector<std::vector<cplx>> rows;
  for (int k = k_lo; k <= k_win; ++k) rows.push_back(scale_coefficients(f, profile, k, 0.0));
  std::vector<Signal> avgs;
  for (int k = k_lo; k <= k_mart; ++k) avgs.push_back(martingale_avg(f, k));

  Signal win(grid);
  Signal mart(grid);
  std::vector<cplx> seq;
  for (std::size_t m = 0; m < grid.size(); ++m) {
    seq.clear();
    for (int k = k_lo; k <= k_win; ++k) {
      seq.push_back(rows[static_cast<std::size_t>(k - k_lo)][static_cast<std::size_t>(interval_index(grid, m, k))]);
    }
    win[m] = rvar_norm(std::span<const cplx>(seq), r);
    seq.clear();
    for (const auto& a : avgs) seq.push_back(a[m]);
    mart[m] = rvar_norm(std::span<const cplx>(seq), r);
  }
  rep.window_lhs = lp_norm(win, p);
  rep.window_rhs = (1.0 + windows.center_variation(r, static_cast<std::size_t>(rep.scales))) * rep.f_norm;
  rep.window_ratio = rep.window_rhs > 0.0 ? rep.window_lhs / rep.window_rhs : 0.0;
  rep.lepingle_lhs = lp_norm(mart, p);
  rep.lepingle_ratio = rep.f_norm > 0.0 ? rep.lepingle_lhs / rep.f_norm : 0.0;
  return rep;
}

}  // namespace maxmult
