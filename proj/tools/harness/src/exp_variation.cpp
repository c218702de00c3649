#include <algorithm>
#include <cmath>
#include <limits>

#include "maxmult/harness/experiments.hpp"
#include "maxmult/harness/generators.hpp"
#include "maxmult/harness/oracles.hpp"
#include "maxmult/rng.hpp"
#include "maxmult/variation.hpp"

namespace maxmult::harness {
namespace {

constexpr std::uint64_t kVariationStream = 1;
constexpr std::uint64_t kLemmaStream = 2;

VarSequence as_sequence(CounterRng& rng, const std::vector<std::vector<cplx>>& values) {
  std::vector<std::int64_t> labels(values.size());
  std::int64_t label = static_cast<std::int64_t>(rng.below(5)) - 2;
  for (auto& l : labels) {
    l = label;
    label += 1 + static_cast<std::int64_t>(rng.below(3));
  }
  return VarSequence::vectors(std::move(labels), values);
}

std::vector<cplx> component(const std::vector<std::vector<cplx>>& values, std::size_t n) {
  std::vector<cplx> out;
  for (const auto& v : values) out.push_back(v[n]);
  return out;
}

double draw_r(CounterRng& rng, double lo, double hi) {
  // integer orders show up often in practice, give them extra weight
  switch (rng.below(4)) {
    case 0:
      return lo;
    case 1:
      return std::min(hi, lo + 1.0);
    default:
      return lo + (hi - lo) * rng.uniform();
  }
}

double ratio_of(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  return lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

void record(LemmaStats& stats, double ratio, bool violated, std::size_t trial, double relaxed = 0.0) {
  stats.max_ratio = std::max(stats.max_ratio, ratio);
  if (relaxed > 0.0 && ratio > relaxed * (1 + 1e-12)) ++stats.relaxed_violations;
  if (violated) {
    if (stats.violations == 0) stats.first_violation = static_cast<std::int64_t>(trial);
    ++stats.violations;
  }
}

}  // namespace

VariationOracleReport run_variation_oracle(const VariationOracleParams& params, std::uint64_t seed) {
  const CounterRng base = CounterRng(seed).substream(kVariationStream);
  VariationOracleReport report;
  for (std::size_t t = 0; t < params.instances; ++t) {
    CounterRng rng = base.substream(t);
    const std::size_t length = 1 + rng.below(params.max_length);
    // half scalar, half vector valued
    const std::size_t dim = (t % 2 == 0) ? 1 : 1 + rng.below(params.max_dim);
    const double r = draw_r(rng, 1.0, 4.0);
    const auto values = random_sequence(rng, length, dim);
    const VarSequence seq = as_sequence(rng, values);

    VariationOracleRow row{t, length, dim, r, 0, 0, 0, 0, 0};
    row.dp_seminorm = rvar_seminorm(seq, r);
    row.dp_norm = rvar_norm(seq, r);
    row.oracle_seminorm = brute_rvar_seminorm(values, r);
    row.oracle_norm = brute_rvar_norm(values, r);
    double err = std::max(std::abs(row.dp_seminorm - row.oracle_seminorm) / std::max(1.0, row.oracle_seminorm),
                          std::abs(row.dp_norm - row.oracle_norm) / std::max(1.0, row.oracle_norm));
    if (dim == 1) {
      const auto scalar = component(values, 0);
      err = std::max(err, std::abs(rvar_seminorm(std::span<const cplx>(scalar), r) - row.oracle_seminorm) /
                              std::max(1.0, row.oracle_seminorm));
      err = std::max(err, std::abs(rvar_norm(std::span<const cplx>(scalar), r) - row.oracle_norm) /
                              std::max(1.0, row.oracle_norm));
    } else {
      err = std::max(err, std::abs(rvar_norm_vec(seq, r, dim) - row.oracle_norm) / std::max(1.0, row.oracle_norm));
    }
    row.error = err;
    report.max_error = std::max(report.max_error, err);
    if (!(err <= params.tolerance)) ++report.failures;
    report.rows.push_back(row);
  }
  return report;
}

LemmaReport run_lemma_suite(const LemmaParams& params, std::uint64_t seed) {
  const CounterRng base = CounterRng(seed).substream(kLemmaStream);
  LemmaReport report;
  const auto exceeds = [&](double lhs, double rhs) { return lhs > rhs + params.tolerance * std::max(1.0, rhs); };

  for (std::size_t t = 0; t < params.instances; ++t) {
    // product of two scalar sequences
    {
      CounterRng rng = base.substream(3 * t);
      const std::size_t length = 1 + rng.below(params.max_length);
      const double r = draw_r(rng, 1.0, 4.0);
      const auto a = component(random_sequence(rng, length, 1), 0);
      const auto b = component(random_sequence(rng, length, 1), 0);
      std::vector<cplx> ab(length);
      for (std::size_t k = 0; k < length; ++k) ab[k] = a[k] * b[k];
      const double lhs = rvar_norm(std::span<const cplx>(ab), r);
      const double rhs = rvar_norm(std::span<const cplx>(a), r) * rvar_norm(std::span<const cplx>(b), r);
      const double ratio = ratio_of(lhs, rhs);
      record(report.product, ratio, !(ratio <= params.product_constant), t);
      report.rows.push_back({1, t, length, 1, 1, r, lhs, rhs, ratio});
    }
    // l^2(N) aggregation
    {
      CounterRng rng = base.substream(3 * t + 1);
      const std::size_t length = 1 + rng.below(params.max_length);
      const std::size_t dim = 1 + rng.below(params.max_dim);
      const double r = draw_r(rng, 2.0, 4.0);
      const auto values = random_sequence(rng, length, dim);
      const VarSequence seq = as_sequence(rng, values);
      const double lhs = rvar_norm_vec(seq, r, dim);
      double sq = 0.0;
      for (std::size_t n = 0; n < dim; ++n) {
        const double v = rvar_norm(std::span<const cplx>(component(values, n)), r);
        sq += v * v;
      }
      const double rhs = std::sqrt(sq);
      const double ratio = ratio_of(lhs, rhs);
      record(report.aggregation, ratio, exceeds(lhs, rhs), t, std::sqrt(2.0));
      report.rows.push_back({2, t, length, dim, 1, r, lhs, rhs, ratio});
    }
    // splitting into consecutive blocks
    {
      CounterRng rng = base.substream(3 * t + 2);
      const std::size_t length = 2 + rng.below(params.max_length - 1);
      const double r = draw_r(rng, 1.0, 4.0);
      const auto x = component(random_sequence(rng, length, 1), 0);
      std::vector<std::size_t> cuts{0};
      for (std::size_t i = 1; i < length; ++i)
        if (rng.below(2) == 0) cuts.push_back(i);
      cuts.push_back(length);
      const double lhs = rvar_norm(std::span<const cplx>(x), r);
      double rhs = 0.0;
      for (std::size_t b = 0; b + 1 < cuts.size(); ++b)
        rhs += rvar_norm(std::span<const cplx>(x).subspan(cuts[b], cuts[b + 1] - cuts[b]), r);
      const double ratio = ratio_of(lhs, rhs);
      record(report.splitting, ratio, exceeds(lhs, rhs), t, 3.0);
      report.rows.push_back({3, t, length, 1, cuts.size() - 1, r, lhs, rhs, ratio});
    }
  }
  return report;
}

}  // namespace maxmult::harness
