#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "maxmult/harness/stats.hpp"
#include "maxmult/multiplier.hpp"
#include "maxmult/tiles.hpp"

namespace maxmult::harness {

// ---- variation oracle ----------------------------------------------------

struct VariationOracleParams {
  std::size_t instances = 1000;
  std::size_t max_length = 12;
  std::size_t max_dim = 4;
  double tolerance = 1e-12;  // relative to max(1, oracle value)
};

struct VariationOracleRow {
  std::size_t trial, length, dim;
  double r, dp_seminorm, oracle_seminorm, dp_norm, oracle_norm, error;
};

struct VariationOracleReport {
  std::vector<VariationOracleRow> rows;
  double max_error = 0.0;
  std::size_t failures = 0;
  bool pass() const noexcept { return failures == 0 && !rows.empty(); }
};

VariationOracleReport run_variation_oracle(const VariationOracleParams& params, std::uint64_t seed);

// ---- variational lemma suite -----------------------------------------------

struct LemmaParams {
  std::size_t instances = 10000;  // per lemma
  std::size_t max_length = 12;
  std::size_t max_dim = 4;
  double product_constant = 4.0;  // accepted ratio for the product inequality
  double tolerance = 1e-12;       // relative slack for the exact inequalities
};

struct LemmaRow {
  int lemma;  // 1 product, 2 l^2 aggregation, 3 splitting
  std::size_t trial, length, dim, blocks;
  double r, lhs, rhs, ratio;
};

struct LemmaStats {
  double max_ratio = 0.0;
  std::size_t violations = 0;
  std::size_t relaxed_violations = 0;  // against sqrt 2 (aggregation) or 3 (splitting); diagnostic
  std::int64_t first_violation = -1;  // trial index
};

struct LemmaReport {
  std::vector<LemmaRow> rows;
  LemmaStats product, aggregation, splitting;
  bool pass() const noexcept {
    return product.violations == 0 && aggregation.violations == 0 && splitting.violations == 0;
  }
};

LemmaReport run_lemma_suite(const LemmaParams& params, std::uint64_t seed);

// ---- windowed expansion identity -----------------------------------------

struct WindowIdentityParams {
  std::size_t pairs = 100;
  int length_log2 = 12;
  int samples_log2 = 16;
  int oversample_log2 = 1;
  double tolerance = 1e-6;
};

struct WindowIdentityRow {
  std::size_t trial;
  double lambda;
  int k;
  double rel_error, rel_error_critical;
};

struct WindowIdentityReport {
  std::vector<WindowIdentityRow> rows;
  double max_error = 0.0;
  double max_error_critical = 0.0;
  bool pass(double tolerance) const noexcept { return !rows.empty() && max_error <= tolerance; }
};

WindowIdentityReport run_window_identity(const WindowIdentityParams& params, std::uint64_t seed);

// ---- lower bound (sign patterns on unit bands) -----------------------------

struct LowerBoundParams {
  double p = 1.5;
  std::vector<int> N = {8, 16, 32, 64, 128, 256};
  std::size_t trials = 32;
  int length_log2 = 6;
  int samples_log2 = 16;
};

struct LowerBoundRow {
  int N;
  double best_ratio, mean_ratio, f_norm, sq_ratio;
};

struct LowerBoundReport {
  double p = 1.5;
  std::vector<LowerBoundRow> rows;
  SlopeFit ratio_fit, norm_fit, sq_fit;
  double target_slope() const noexcept { return 1.0 / p - 0.5; }
  bool slope_ok() const noexcept { return ratio_fit.slope >= target_slope() - 0.05; }
  bool norm_ok() const noexcept { return std::abs(norm_fit.slope - (1.0 - 1.0 / p)) <= 0.05; }
  bool pass() const noexcept { return slope_ok() && norm_ok(); }
};

/// Throws unless 1 < p < 2, N has at least four entries and the grid holds [0, max N).
LowerBoundReport run_lower_bound(const LowerBoundParams& params, std::uint64_t seed);

// ---- upper bound scaling --------------------------------------------------

struct UpperScalingParams {
  double p = 1.5;
  double control_p = 2.0;
  double r = 2.5;
  std::vector<int> N = {8, 16, 32, 64, 128};
  std::size_t random_trials = 4;
  std::size_t sign_trials = 8;
  int length_log2 = 9;
  int max_samples_log2 = 18;
  BumpKind bump = BumpKind::kCos2;
  bool strict_adapted = true;
};

struct UpperTrialRow {
  int N;
  std::string family;  // gaussian, extremal, signed_weights
  std::size_t trial;
  double ratio, ratio_control;
  double lower, upper, crude;  // control chain in L^p
  double pointwise_margin;     // min over x of crude(x) - sup_k |Delta_k f|(x)
};

struct UpperScalingReport {
  double p = 1.5, control_p = 2.0, r = 2.5;
  std::vector<UpperTrialRow> trials;
  std::vector<int> N;
  std::vector<double> best, best_control;
  SlopeFit fit, control_fit;
  std::size_t chain_violations = 0;
  double upper_edge() const noexcept { return 1.0 / p - 1.0 / r + 0.15; }
  double control_edge() const noexcept { return 1.0 / control_p - 1.0 / r + 0.15; }
  double lower_edge() const noexcept { return 1.0 / p - 0.5 - 0.05; }
  bool pass() const noexcept {
    return fit.slope <= upper_edge() && control_fit.slope <= control_edge() && chain_violations == 0;
  }
};

/// Throws unless 1 < p < 2 < r and the largest N fits in 2^max_samples_log2 samples.
UpperScalingReport run_upper_scaling(const UpperScalingParams& params, std::uint64_t seed);

// ---- entropy / exponential sums -------------------------------------------

struct EntropyParams {
  double r = 2.5;
  std::vector<int> N = {4, 8, 16, 32, 64, 128, 256};
  std::size_t scales = 16;
  std::size_t trials = 8;
  int oversample = 8;
  double ratio_cap = 8.0;
};

struct EntropyRow {
  int N;
  std::size_t trial;
  std::string kind;  // walk, iid
  double statistic, ratio;
};

struct EntropyReport {
  double r = 2.5;
  double ratio_cap = 8.0;
  std::vector<EntropyRow> rows;
  std::vector<int> N;
  std::vector<double> best;
  SlopeFit fit;
  double max_ratio = 0.0;
  double edge() const noexcept { return 0.5 - 1.0 / r + 0.15; }
  bool pass() const noexcept { return fit.slope <= edge() && max_ratio <= ratio_cap; }
};

/// Throws unless r > 2.
EntropyReport run_entropy_scaling(const EntropyParams& params, std::uint64_t seed);

// ---- tile decomposition audit ---------------------------------------------

struct TileSuiteParams {
  int length_log2 = 11;
  int samples_log2 = 15;
  int frequencies = 8;  // lambda_n = n - frequencies/2
  std::size_t max_tiles = 200;
};

FrequencySystem tile_suite_system(const TileSuiteParams& params);

struct DecompositionCheck {
  bool partition = true;        // strata and residual partition S
  bool strata_convex = true;
  bool tops_disjoint = true;    // I_T x 10 omega_T pairwise disjoint inside each stratum
  bool trees_well_formed = true;
  bool residual_sizes = true;   // what is left after stratum m has size <= lambda_m
  bool tree_sizes = true;       // every tree of stratum m has size <= 2 lambda_m
  double max_residual_ratio = 0.0;
  double max_bessel = 0.0;      // sum |I_T| lambda^2 / ||f||_2^2
  bool ok() const noexcept {
    return partition && strata_convex && tops_disjoint && trees_well_formed && residual_sizes && tree_sizes &&
           std::isfinite(max_bessel);
  }
};

/// Recomputes every postcondition of size_decompose from scratch.
DecompositionCheck verify_decomposition(const TileSet& S, const Decomposition& dec, const SizeTable& sizes);

struct SelectionCheck {
  bool partition = true;
  bool tops_disjoint = true;
  bool residual_size = true;
  double residual_ratio = 0.0;  // size(residual) / lambda
  double bessel = 0.0;
  bool ok() const noexcept { return partition && tops_disjoint && residual_size && std::isfinite(bessel); }
};

SelectionCheck verify_selection(const TileSet& S, const Selection& sel, const SizeTable& sizes, double lambda);

struct DecompositionParams {
  std::size_t sets = 50;
  std::vector<double> lambda_multiples = {0.5, 0.75, 1.0};  // select_trees thresholds, in units of size(S)
  TileSuiteParams suite;
};

struct DecompositionRow {
  std::size_t set;
  std::size_t tiles;
  int signal_kind;
  double initial_size;
  std::size_t strata, trees;
  bool roundtrip_equal;
  bool check_ok, check_ok_parsed;
  double max_residual_ratio, max_bessel;
  std::size_t selection_failures;
};

struct DecompositionReport {
  std::vector<DecompositionRow> rows;
  std::size_t failures = 0;
  double max_bessel = 0.0;
  double max_residual_ratio = 0.0;
  bool pass() const noexcept { return failures == 0 && !rows.empty() && std::isfinite(max_bessel); }
};

DecompositionReport run_decomposition_audit(const DecompositionParams& params, std::uint64_t seed);

// ---- counting sets and W_T ------------------------------------------------

struct CountingParams {
  std::size_t trees = 100;
  double counting_bound = 12.0;
  double bmo_bound = 2.0;
  TileSuiteParams suite;
};

struct CountingRow {
  std::size_t tree, tiles;
  int top_k;
  std::size_t levels;
  bool flanks_disjoint;
  double counting_ratio, bmo, local_bound;
};

struct CountingReport {
  double counting_bound = 12.0, bmo_bound = 2.0;
  std::vector<CountingRow> rows;
  std::size_t flank_failures = 0;
  double max_counting = 0.0, max_bmo = 0.0, max_local = 0.0, max_bmo_over_local = 0.0;
  bool pass() const noexcept {
    return !rows.empty() && flank_failures == 0 && max_counting <= counting_bound && max_bmo <= bmo_bound;
  }
};

CountingReport run_counting_audit(const CountingParams& params, std::uint64_t seed);

// ---- exceptional sets -----------------------------------------------------

struct ExceptionalParams {
  std::size_t pairs = 10;
  std::vector<double> lambdas = {0.25, 0.0625};
  double epsilon = 0.1;
  double p = 1.5;
  double r = 2.5;
  double threshold_constant = 0.125;
  TileSuiteParams suite;
};

struct ExceptionalRow {
  std::size_t pair;
  double lambda, measure_F, measure_E, bound_E;
  std::size_t tiles_in, tiles_kept, strata;
  double size_kept, measure_E_prime, max_off, bound_value;
  std::size_t samples, violations;
  bool tops_unique;
  double identity_error;
};

struct ExceptionalAuditReport {
  std::vector<ExceptionalRow> rows;
  std::size_t violations = 0;
  std::size_t E_bound_failures = 0;
  double worst_margin = 0.0;  // max over rows of max_off / bound_value
  bool pass() const noexcept { return !rows.empty() && violations == 0 && E_bound_failures == 0; }
};

ExceptionalAuditReport run_exceptional_audit(const ExceptionalParams& params, std::uint64_t seed);

}  // namespace maxmult::harness
