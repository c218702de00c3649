#include <algorithm>
#include <cmath>
#include <map>

#include "maxmult/counting.hpp"
#include "maxmult/error.hpp"
#include "maxmult/exceptional.hpp"
#include "maxmult/harness/experiments.hpp"
#include "maxmult/harness/generators.hpp"
#include "maxmult/rng.hpp"
#include "maxmult/tile_io.hpp"

namespace maxmult::harness {
namespace {

constexpr std::uint64_t kDecompositionStream = 7;
constexpr std::uint64_t kCountingStream = 8;
constexpr std::uint64_t kExceptionalStream = 9;

double energy(const Signal& f) {
  double s = 0;
  for (const auto& v : f.values()) s += std::norm(v);
  return s * f.grid().spacing();
}

bool tops_pairwise_disjoint(const FrequencySystem& system, const std::vector<Tree>& forest) {
  for (std::size_t a = 0; a < forest.size(); ++a)
    for (std::size_t b = a + 1; b < forest.size(); ++b)
      if (top_rectangles_intersect(system, forest[a].top, forest[b].top)) return false;
  return true;
}

bool tree_well_formed(const Tree& T) {
  if (T.tiles.empty()) return false;
  for (const auto& s : T.tiles)
    if (s.n != T.top.n || !T.top.I.contains(s.I)) return false;
  return true;
}

double top_length_sum(const std::vector<Tree>& forest) {
  double s = 0;
  for (const auto& T : forest) s += T.top.I.length();
  return s;
}

// Adds every tile of the forest to `seen`; false on a repeat.
bool collect(const std::vector<Tree>& forest, std::map<Tile, int>& seen) {
  bool ok = true;
  for (const auto& T : forest)
    for (const auto& s : T.tiles)
      if (++seen[s] > 1) ok = false;
  return ok;
}

}  // namespace

FrequencySystem tile_suite_system(const TileSuiteParams& params) {
  std::vector<double> lambdas;
  for (int n = 0; n < params.frequencies; ++n) lambdas.push_back(n - params.frequencies / 2);
  return FrequencySystem(DyadicGrid(params.length_log2, params.samples_log2), lambdas);
}

DecompositionCheck verify_decomposition(const TileSet& S, const Decomposition& dec, const SizeTable& sizes) {
  DecompositionCheck check;
  const auto& system = sizes.system();
  const double f2 = energy(sizes.signal());

  std::map<Tile, int> seen;
  for (const auto& st : dec.strata) {
    if (!collect(st.forest, seen)) check.partition = false;
    for (const auto& T : st.forest)
      if (!tree_well_formed(T)) check.trees_well_formed = false;
    const double sum = top_length_sum(st.forest);
    if (std::abs(sum - st.sum_top_lengths) > 1e-9 * std::max(1.0, sum)) check.trees_well_formed = false;
    if (!check_convex(stratum_tiles(st))) check.strata_convex = false;
    if (!tops_pairwise_disjoint(system, st.forest)) check.tops_disjoint = false;
    if (f2 > 0) check.max_bessel = std::max(check.max_bessel, sum * st.lambda * st.lambda / f2);
    for (const auto& T : st.forest)
      if (sizes.tree_size(T) > 2.0 * st.lambda * (1 + 1e-12) && !st.terminal) check.tree_sizes = false;
  }
  for (const auto& s : dec.residual)
    if (++seen[s] > 1) check.partition = false;
  if (seen.size() != S.size()) check.partition = false;
  for (const auto& [s, c] : seen)
    if (!S.count(s)) check.partition = false;

  // what survives each stratum must have size at most its threshold
  TileSet remaining = S;
  for (const auto& st : dec.strata) {
    for (const auto& T : st.forest)
      for (const auto& s : T.tiles) remaining.erase(s);
    if (st.terminal) continue;
    const double left = sizes.set_size(remaining);
    check.max_residual_ratio = std::max(check.max_residual_ratio, left / st.lambda);
    if (left > st.lambda * (1 + 1e-12)) check.residual_sizes = false;
  }
  if (remaining != dec.residual) check.partition = false;
  if (!dec.residual.empty() && sizes.set_size(dec.residual) != 0.0) check.residual_sizes = false;
  return check;
}

SelectionCheck verify_selection(const TileSet& S, const Selection& sel, const SizeTable& sizes, double lambda) {
  SelectionCheck check;
  std::map<Tile, int> seen;
  if (!collect(sel.forest, seen)) check.partition = false;
  for (const auto& T : sel.forest)
    if (!tree_well_formed(T)) check.partition = false;
  for (const auto& s : sel.residual)
    if (++seen[s] > 1) check.partition = false;
  if (seen.size() != S.size()) check.partition = false;
  for (const auto& [s, c] : seen)
    if (!S.count(s)) check.partition = false;
  check.tops_disjoint = tops_pairwise_disjoint(sizes.system(), sel.forest);
  const double left = sizes.set_size(sel.residual);
  check.residual_ratio = lambda > 0 ? left / lambda : 0.0;
  check.residual_size = left <= lambda * (1 + 1e-12);
  const double f2 = energy(sizes.signal());
  check.bessel = f2 > 0 ? top_length_sum(sel.forest) * lambda * lambda / f2 : 0.0;
  return check;
}

DecompositionReport run_decomposition_audit(const DecompositionParams& params, std::uint64_t seed) {
  const FrequencySystem system = tile_suite_system(params.suite);
  const CounterRng base = CounterRng(seed).substream(kDecompositionStream);
  DecompositionReport report;
  for (std::size_t i = 0; i < params.sets; ++i) {
    CounterRng rng = base.substream(i);
    const TileSet S = random_convex_tiles(system, rng, params.suite.max_tiles);
    const int kind = static_cast<int>(i % 2);
    const Signal f = random_test_signal(system, rng, kind);

    const SizeTable sizes(f, system);
    const Decomposition dec = size_decompose(S, sizes);
    const std::string text = decomposition_to_json(dec);
    const Decomposition parsed = decomposition_from_json(text);

    // fresh table so nothing cached during the decomposition is reused
    const SizeTable audit(f, system);
    const DecompositionCheck check = verify_decomposition(S, dec, audit);
    const DecompositionCheck check_parsed = verify_decomposition(S, parsed, audit);

    std::size_t trees = 0;
    for (const auto& st : dec.strata) trees += st.forest.size();

    std::size_t selection_failures = 0;
    const double sigma = audit.set_size(S);
    if (sigma > 0) {
      for (double c : params.lambda_multiples) {
        const double lambda = c * sigma;
        const SelectionCheck sc = verify_selection(S, select_trees(S, sizes, lambda), audit, lambda);
        if (!sc.ok()) ++selection_failures;
      }
    }

    DecompositionRow row{i,
                         S.size(),
                         kind,
                         dec.initial_size,
                         dec.strata.size(),
                         trees,
                         decomposition_to_json(parsed) == text,
                         check.ok(),
                         check_parsed.ok(),
                         check.max_residual_ratio,
                         check.max_bessel,
                         selection_failures};
    if (!row.roundtrip_equal || !row.check_ok || !row.check_ok_parsed || selection_failures) ++report.failures;
    report.max_bessel = std::max(report.max_bessel, row.max_bessel);
    report.max_residual_ratio = std::max(report.max_residual_ratio, row.max_residual_ratio);
    report.rows.push_back(row);
  }
  return report;
}

CountingReport run_counting_audit(const CountingParams& params, std::uint64_t seed) {
  const FrequencySystem system = tile_suite_system(params.suite);
  const CounterRng base = CounterRng(seed).substream(kCountingStream);
  CountingReport report;
  report.counting_bound = params.counting_bound;
  report.bmo_bound = params.bmo_bound;
  for (std::size_t i = 0; i < params.trees; ++i) {
    CounterRng rng = base.substream(i);
    const Tree T = random_tree(system, rng, params.suite.max_tiles);
    const CountingSets sets = counting_sets(T);
    const bool disjoint = flanks_disjoint(flanks(sets, true)) && flanks_disjoint(flanks(sets, false));
    const Signal W = wt_function(T, system.grid());
    CountingRow row{i,
                    T.tiles.size(),
                    T.top.k(),
                    sets.levels.size(),
                    disjoint,
                    counting_ratio(sets),
                    dyadic_bmo(W),
                    local_average_bound(W, T.top.I)};
    if (!disjoint) ++report.flank_failures;
    report.max_counting = std::max(report.max_counting, row.counting_ratio);
    report.max_bmo = std::max(report.max_bmo, row.bmo);
    report.max_local = std::max(report.max_local, row.local_bound);
    if (row.local_bound > 0) report.max_bmo_over_local = std::max(report.max_bmo_over_local, row.bmo / row.local_bound);
    report.rows.push_back(row);
  }
  return report;
}

ExceptionalAuditReport run_exceptional_audit(const ExceptionalParams& params, std::uint64_t seed) {
  const FrequencySystem system = tile_suite_system(params.suite);
  const CounterRng base = CounterRng(seed).substream(kExceptionalStream);
  const WindowSystem windows;
  ExceptionalAuditReport report;
  for (std::size_t i = 0; i < params.pairs; ++i) {
    CounterRng rng = base.substream(i);
    const TileSet S = random_convex_tiles(system, rng, params.suite.max_tiles);
    const Signal F = random_sparse_indicator(system.grid(), rng);
    for (double lambda : params.lambdas) {
      ExceptionalOptions o;
      o.lambda = lambda;
      o.epsilon = params.epsilon;
      o.p = params.p;
      o.r = params.r;
      o.threshold_constant = params.threshold_constant;
      const ExceptionalReport rep = exceptional_sets(S, F, system, windows, o);
      ExceptionalRow row{i,
                         lambda,
                         rep.measure_F,
                         rep.measure_E,
                         rep.bound_E,
                         rep.tiles_in,
                         rep.tiles_kept,
                         rep.decomposition.strata.size(),
                         rep.size_kept,
                         rep.measure_E_prime,
                         rep.max_off_exceptional,
                         rep.bound_value,
                         rep.samples_checked,
                         rep.violations,
                         rep.tops_unique,
                         rep.identity_error};
      report.violations += rep.violations;
      if (!rep.E_bound_ok) ++report.E_bound_failures;
      if (rep.bound_value > 0) report.worst_margin = std::max(report.worst_margin, rep.max_off_exceptional / rep.bound_value);
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace maxmult::harness
