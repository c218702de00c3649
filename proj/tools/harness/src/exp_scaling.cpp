#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "maxmult/error.hpp"
#include "maxmult/expsum.hpp"
#include "maxmult/harness/experiments.hpp"
#include "maxmult/multiplier.hpp"
#include "maxmult/rng.hpp"
#include "maxmult/variation.hpp"

namespace maxmult::harness {
namespace {

constexpr std::uint64_t kLowerStream = 4;
constexpr std::uint64_t kUpperStream = 5;
constexpr std::uint64_t kEntropyStream = 6;

void require_sweep(const std::vector<int>& N) {
  if (N.size() < 4) throw Error("scaling sweep needs at least four N values");
  for (int n : N)
    if (n < 1) throw Error("scaling sweep: N must be positive");
}

std::vector<double> as_doubles(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace

LowerBoundReport run_lower_bound(const LowerBoundParams& params, std::uint64_t seed) {
  if (!(params.p > 1.0 && params.p < 2.0)) throw Error("run_lower_bound: p must lie in (1, 2)");
  require_sweep(params.N);
  const DyadicGrid grid(params.length_log2, params.samples_log2);
  const auto per_band = static_cast<std::size_t>(std::ldexp(1.0, params.length_log2));
  const int maxN = *std::max_element(params.N.begin(), params.N.end());
  if (static_cast<std::size_t>(maxN) * per_band >= grid.size() / 2)
    throw Error("run_lower_bound: grid band too small for N = " + std::to_string(maxN));

  const CounterRng base = CounterRng(seed).substream(kLowerStream);
  const double height = std::sqrt(static_cast<double>(grid.size())) / static_cast<double>(per_band);
  LowerBoundReport report;
  report.p = params.p;
  std::vector<double> best, norms, sq;
  for (int N : params.N) {
    const std::size_t bins = static_cast<std::size_t>(N) * per_band;
    // f_N-hat = 1 on [0, N) in physical units
    Signal spec(grid);
    for (std::size_t j = 0; j < bins; ++j) spec[j] = height;
    const Signal f = idft(spec);
    const double f_norm = lp_norm(f, params.p);

    double top = 0.0, mean = 0.0;
    for (std::size_t t = 0; t < params.trials; ++t) {
      CounterRng rng = base.substream(static_cast<std::uint64_t>(N)).substream(t);
      Signal g = spec;
      for (int n = 0; n < N; ++n) {
        const double e = rng.sign();
        for (std::size_t j = static_cast<std::size_t>(n) * per_band; j < static_cast<std::size_t>(n + 1) * per_band; ++j)
          g[j] *= e;
      }
      const double ratio = lp_norm(idft(g), params.p) / f_norm;
      top = std::max(top, ratio);
      mean += ratio;
    }
    mean /= static_cast<double>(params.trials);

    // square function over the unit bands
    Signal acc(grid);
    for (int n = 0; n < N; ++n) {
      Signal band(grid);
      for (std::size_t j = static_cast<std::size_t>(n) * per_band; j < static_cast<std::size_t>(n + 1) * per_band; ++j)
        band[j] = height;
      const Signal b = idft(band);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += std::norm(b[i]);
    }
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = std::sqrt(acc[i].real());
    const double sq_ratio = lp_norm(acc, params.p) / f_norm;

    report.rows.push_back({N, top, mean, f_norm, sq_ratio});
    best.push_back(top);
    norms.push_back(f_norm);
    sq.push_back(sq_ratio);
  }
  const auto x = as_doubles(params.N);
  report.ratio_fit = fit_slope(x, best);
  report.norm_fit = fit_slope(x, norms);
  report.sq_fit = fit_slope(x, sq);
  return report;
}

UpperScalingReport run_upper_scaling(const UpperScalingParams& params, std::uint64_t seed) {
  if (!(params.p > 1.0 && params.p < 2.0 && params.r > 2.0))
    throw Error("run_upper_scaling: need 1 < p < 2 < r");
  if (!(params.control_p > 1.0)) throw Error("run_upper_scaling: control p must exceed 1");
  require_sweep(params.N);
  const CounterRng base = CounterRng(seed).substream(kUpperStream);

  UpperScalingReport report;
  report.p = params.p;
  report.control_p = params.control_p;
  report.r = params.r;
  for (int N : params.N) {
    // nyquist must clear lambda_max plus the band of width D/10
    const int samples_log2 =
        params.length_log2 + 1 + static_cast<int>(std::ceil(std::log2(0.5 * N + 1.0)));
    if (samples_log2 > params.max_samples_log2)
      throw Error("run_upper_scaling: N = " + std::to_string(N) + " needs 2^" + std::to_string(samples_log2) +
                  " samples");
    const DyadicGrid grid(params.length_log2, samples_log2);
    std::vector<double> lambdas;
    for (int n = 0; n < N; ++n) lambdas.push_back(n - N / 2);
    const FrequencySystem system(grid, lambdas);
    if (system.scales().empty()) throw Error("run_upper_scaling: no admissible scales");
    const int kmax = system.scales().back();
    const double half = std::ldexp(1.0, kmax - 1);

    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double xi = grid.frequency(j);
      for (double l : lambdas)
        if (std::abs(xi - l) <= half) {
          support.push_back(j);
          break;
        }
    }

    CounterRng nrng = base.substream(static_cast<std::uint64_t>(N));
    double best = 0.0, best_control = 0.0;

    auto run_trial = [&](const std::string& family_name, std::size_t t, const Signal& f, const Signal& envelope,
                         const MultiplierFamily& family) {
      const Signal sup = maximal_delta(f, family);
      double lower = 0.0;
      for (int k : system.scales()) lower = std::max(lower, lp_norm(delta_k(f, family, k), params.p));
      const double wnorm = vstar_norm_weights(family, params.r);
      const double scale = 2.0 * std::sqrt(static_cast<double>(N)) * wnorm;
      Signal crude(grid);
      double margin = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < grid.size(); ++i) {
        crude[i] = scale * envelope[i].real();
        margin = std::min(margin, crude[i].real() - sup[i].real());
      }
      const double fp = lp_norm(f, params.p);
      UpperTrialRow row{N,
                        family_name,
                        t,
                        lp_norm(sup, params.p) / fp,
                        lp_norm(sup, params.control_p) / lp_norm(f, params.control_p),
                        lower,
                        lp_norm(sup, params.p),
                        lp_norm(crude, params.p),
                        margin};
      const double tol = 1e-12 * row.crude;
      if (row.lower > row.upper * (1 + 1e-12) || row.upper > row.crude + tol || margin < -tol)
        ++report.chain_violations;
      best = std::max(best, row.ratio);
      best_control = std::max(best_control, row.ratio_control);
      report.trials.push_back(row);
    };

    // (sum_n (M f_n)^2)^{1/2}, the envelope of the crude bound
    auto envelope_of = [&](const Signal& f) {
      Signal env(grid);
      for (std::size_t n = 0; n < system.size(); ++n) {
        const Signal m = hl_maximal(band_project(f, system, n));
        for (std::size_t i = 0; i < grid.size(); ++i) env[i] += m[i].real() * m[i].real();
      }
      for (std::size_t i = 0; i < grid.size(); ++i) env[i] = std::sqrt(env[i].real());
      return env;
    };

    const MultiplierFamily unit(system, params.bump, params.strict_adapted);
    for (std::size_t t = 0; t < params.random_trials; ++t) {
      CounterRng rng = nrng.substream(t);
      Signal spec(grid);
      for (auto j : support) spec[j] = rng.complex_normal();
      const Signal f = idft(spec);
      run_trial("gaussian", t, f, envelope_of(f), unit);
    }

    Signal spec(grid);
    for (auto j : support) spec[j] = 1.0;
    const Signal extremal = idft(spec);
    const Signal extremal_env = envelope_of(extremal);
    run_trial("extremal", 0, extremal, extremal_env, unit);

    // w_{k,n} = eps_n, constant along scales, so ||w||_{V^{r,*}} = 1
    for (std::size_t t = 0; t < params.sign_trials; ++t) {
      CounterRng rng = nrng.substream(1000 + t);
      std::vector<double> eps(system.size());
      for (auto& e : eps) e = rng.sign();
      std::vector<cplx> weights;
      for (std::size_t s = 0; s < system.scales().size(); ++s)
        for (std::size_t n = 0; n < system.size(); ++n) weights.push_back(eps[n]);
      const MultiplierFamily signed_family(system, params.bump, params.strict_adapted, std::move(weights));
      run_trial("signed_weights", t, extremal, extremal_env, signed_family);
    }

    report.N.push_back(N);
    report.best.push_back(best);
    report.best_control.push_back(best_control);
  }
  const auto x = as_doubles(report.N);
  report.fit = fit_slope(x, report.best);
  report.control_fit = fit_slope(x, report.best_control);
  return report;
}

EntropyReport run_entropy_scaling(const EntropyParams& params, std::uint64_t seed) {
  if (!(params.r > 2.0)) throw Error("run_entropy_scaling: r must exceed 2");
  require_sweep(params.N);
  if (params.scales < 1) throw Error("run_entropy_scaling: need at least one scale");
  const CounterRng base = CounterRng(seed).substream(kEntropyStream);
  EntropyReport report;
  report.r = params.r;
  report.ratio_cap = params.ratio_cap;
  const std::size_t K = params.scales;
  for (int N : params.N) {
    const auto dim = static_cast<std::size_t>(N);
    std::vector<double> lambdas(dim);
    for (std::size_t n = 0; n < dim; ++n) lambdas[n] = static_cast<double>(n);
    const double norm_scale = std::pow(static_cast<double>(N), 0.5 - 1.0 / params.r);
    double best = 0.0;
    for (std::size_t t = 0; t < params.trials; ++t) {
      CounterRng rng = base.substream(static_cast<std::uint64_t>(N)).substream(t);
      std::vector<std::vector<cplx>> c(K, std::vector<cplx>(dim));
      std::string kind;
      switch (t % 3) {
        case 0:
          kind = "walk";
          for (std::size_t n = 0; n < dim; ++n) c[0][n] = rng.complex_normal();
          for (std::size_t k = 1; k < K; ++k)
            for (std::size_t n = 0; n < dim; ++n)
              c[k][n] = c[k - 1][n] + rng.complex_normal() / std::sqrt(static_cast<double>(K));
          break;
        case 1:
          kind = "iid";
          for (auto& row : c)
            for (auto& v : row) v = rng.complex_normal();
          break;
        default: {
          // phases aligned to peak at a different point for every k
          kind = "aligned";
          const double shift = rng.uniform();
          for (std::size_t k = 0; k < K; ++k) {
            const double y = std::fmod(shift + static_cast<double>(k) / static_cast<double>(K), 1.0);
            for (std::size_t n = 0; n < dim; ++n)
              c[k][n] = std::polar(1.0, -2.0 * std::numbers::pi * lambdas[n] * y);
          }
          break;
        }
      }
      std::vector<std::int64_t> labels(K);
      for (std::size_t k = 0; k < K; ++k) labels[k] = static_cast<std::int64_t>(k);
      const double norm = rvar_norm_vec(VarSequence::vectors(labels, c), params.r, dim);
      for (auto& row : c)
        for (auto& v : row) v /= norm;
      const double stat = max_exp_sum(VarSequence::vectors(labels, c), lambdas, params.oversample);
      const double ratio = stat / norm_scale;
      report.rows.push_back({N, t, kind, stat, ratio});
      report.max_ratio = std::max(report.max_ratio, ratio);
      best = std::max(best, stat);
    }
    report.N.push_back(N);
    report.best.push_back(best);
  }
  report.fit = fit_slope(as_doubles(report.N), report.best);
  return report;
}

}  // namespace maxmult::harness
