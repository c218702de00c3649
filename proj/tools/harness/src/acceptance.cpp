#include "maxmult/harness/acceptance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "maxmult/error.hpp"
#include "maxmult/rng.hpp"

namespace maxmult::harness {
namespace {

using nlohmann::json;

json num(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

json fit_json(const SlopeFit& f) {
  return {{"slope", num(f.slope)}, {"stderr", num(f.stderr_slope)}, {"intercept", num(f.intercept)},
          {"points", f.points}};
}

json lemma_json(const LemmaStats& s) {
  return {{"max_ratio", num(s.max_ratio)},
          {"violations", s.violations},
          {"first_violation", s.first_violation},
          {"relaxed_violations", s.relaxed_violations}};
}

std::int64_t i64(std::size_t v) { return static_cast<std::int64_t>(v); }
std::int64_t i64(int v) { return v; }
std::int64_t i64(bool v) { return v ? 1 : 0; }

CriterionResult make(int id, const std::string& stem, bool pass, json metrics, Table table) {
  CriterionResult r;
  r.id = id;
  r.name = criterion_name(id);
  r.stem = stem;
  r.pass = pass;
  r.metrics = std::move(metrics);
  r.table = std::move(table);
  return r;
}

}  // namespace

std::string criterion_name(int id) {
  switch (id) {
    case 1: return "variation oracle";
    case 2: return "variational lemma suite";
    case 3: return "windowed expansion identity";
    case 4: return "lower bound scaling";
    case 5: return "upper bound scaling";
    case 6: return "entropy bound";
    case 7: return "tile decomposition audit";
    case 8: return "counting sets and BMO";
    case 9: return "exceptional set pointwise bound";
    case 10: return "determinism";
    default: throw Error("unknown criterion " + std::to_string(id));
  }
}

std::set<std::string> SuiteParams::known_keys() {
  return {"seed", "rng", "out", "format",
          "variation.instances", "variation.max_length", "variation.max_dim", "variation.tolerance",
          "lemmas.instances", "lemmas.max_length", "lemmas.max_dim", "lemmas.product_constant", "lemmas.tolerance",
          "window.pairs", "window.length_log2", "window.samples_log2", "window.oversample_log2", "window.tolerance",
          "lower.p", "lower.N", "lower.trials", "lower.length_log2", "lower.samples_log2",
          "upper.p", "upper.control_p", "upper.r", "upper.N", "upper.random_trials", "upper.sign_trials",
          "upper.length_log2", "upper.max_samples_log2", "upper.bump", "upper.strict_adapted",
          "entropy.r", "entropy.N", "entropy.scales", "entropy.trials", "entropy.oversample", "entropy.ratio_cap",
          "tiles.length_log2", "tiles.samples_log2", "tiles.frequencies", "tiles.max_tiles",
          "decomposition.sets", "decomposition.lambda_multiples",
          "counting.trees", "counting.counting_bound", "counting.bmo_bound",
          "exceptional.pairs", "exceptional.lambdas", "exceptional.epsilon", "exceptional.p", "exceptional.r",
          "exceptional.threshold_constant"};
}

SuiteParams SuiteParams::from_config(const Config& c) {
  c.require_known(known_keys());
  const auto rng = c.text("rng", CounterRng::kAlgorithm);
  if (rng != CounterRng::kAlgorithm) throw Error("config: unsupported rng '" + rng + "'");
  SuiteParams s;
  const auto sz = [&](const std::string& key, std::size_t d) {
    const auto v = c.integer(key, static_cast<std::int64_t>(d));
    if (v < 0) throw Error("config: '" + key + "' must be nonnegative");
    return static_cast<std::size_t>(v);
  };
  const auto in = [&](const std::string& key, int d) { return static_cast<int>(c.integer(key, d)); };
  s.seed = c.u64("seed", kDefaultSeed);

  auto& v = s.variation;
  v.instances = sz("variation.instances", v.instances);
  v.max_length = sz("variation.max_length", v.max_length);
  v.max_dim = sz("variation.max_dim", v.max_dim);
  v.tolerance = c.real("variation.tolerance", v.tolerance);
  if (v.max_length < 1 || v.max_length > 20 || v.max_dim < 1) throw Error("config: variation sizes out of range");

  auto& l = s.lemmas;
  l.instances = sz("lemmas.instances", l.instances);
  l.max_length = sz("lemmas.max_length", l.max_length);
  l.max_dim = sz("lemmas.max_dim", l.max_dim);
  l.product_constant = c.real("lemmas.product_constant", l.product_constant);
  l.tolerance = c.real("lemmas.tolerance", l.tolerance);
  if (l.max_length < 2 || l.max_dim < 1) throw Error("config: lemma sizes out of range");

  auto& w = s.window;
  w.pairs = sz("window.pairs", w.pairs);
  w.length_log2 = in("window.length_log2", w.length_log2);
  w.samples_log2 = in("window.samples_log2", w.samples_log2);
  w.oversample_log2 = in("window.oversample_log2", w.oversample_log2);
  w.tolerance = c.real("window.tolerance", w.tolerance);
  if (w.length_log2 < 8) throw Error("config: window.length_log2 must be at least 8");

  auto& lo = s.lower;
  lo.p = c.real("lower.p", lo.p);
  lo.N = c.ints("lower.N", lo.N);
  lo.trials = sz("lower.trials", lo.trials);
  lo.length_log2 = in("lower.length_log2", lo.length_log2);
  lo.samples_log2 = in("lower.samples_log2", lo.samples_log2);

  auto& u = s.upper;
  u.p = c.real("upper.p", u.p);
  u.control_p = c.real("upper.control_p", u.control_p);
  u.r = c.real("upper.r", u.r);
  u.N = c.ints("upper.N", u.N);
  u.random_trials = sz("upper.random_trials", u.random_trials);
  u.sign_trials = sz("upper.sign_trials", u.sign_trials);
  u.length_log2 = in("upper.length_log2", u.length_log2);
  u.max_samples_log2 = in("upper.max_samples_log2", u.max_samples_log2);
  const auto bump = c.text("upper.bump", "cos2");
  if (bump == "cos2") u.bump = BumpKind::kCos2;
  else if (bump == "indicator") u.bump = BumpKind::kIndicator;
  else throw Error("config: upper.bump must be cos2 or indicator");
  u.strict_adapted = c.flag("upper.strict_adapted", u.strict_adapted);

  auto& e = s.entropy;
  e.r = c.real("entropy.r", e.r);
  e.N = c.ints("entropy.N", e.N);
  e.scales = sz("entropy.scales", e.scales);
  e.trials = sz("entropy.trials", e.trials);
  e.oversample = in("entropy.oversample", e.oversample);
  e.ratio_cap = c.real("entropy.ratio_cap", e.ratio_cap);

  TileSuiteParams suite;
  suite.length_log2 = in("tiles.length_log2", suite.length_log2);
  suite.samples_log2 = in("tiles.samples_log2", suite.samples_log2);
  suite.frequencies = in("tiles.frequencies", suite.frequencies);
  suite.max_tiles = sz("tiles.max_tiles", suite.max_tiles);
  if (suite.frequencies < 1) throw Error("config: tiles.frequencies must be positive");

  auto& d = s.decomposition;
  d.suite = suite;
  d.sets = sz("decomposition.sets", d.sets);
  d.lambda_multiples = c.reals("decomposition.lambda_multiples", d.lambda_multiples);
  for (double m : d.lambda_multiples)
    if (!(m >= 0.5)) throw Error("config: decomposition.lambda_multiples entries must be >= 0.5");

  auto& ct = s.counting;
  ct.suite = suite;
  ct.trees = sz("counting.trees", ct.trees);
  ct.counting_bound = c.real("counting.counting_bound", ct.counting_bound);
  ct.bmo_bound = c.real("counting.bmo_bound", ct.bmo_bound);

  auto& x = s.exceptional;
  x.suite = suite;
  x.pairs = sz("exceptional.pairs", x.pairs);
  x.lambdas = c.reals("exceptional.lambdas", x.lambdas);
  x.epsilon = c.real("exceptional.epsilon", x.epsilon);
  x.p = c.real("exceptional.p", x.p);
  x.r = c.real("exceptional.r", x.r);
  x.threshold_constant = c.real("exceptional.threshold_constant", x.threshold_constant);
  return s;
}

CriterionResult to_result(const VariationOracleReport& r, const VariationOracleParams& p) {
  Table t({"trial", "length", "dim", "r", "dp_seminorm", "oracle_seminorm", "dp_norm", "oracle_norm", "error"});
  for (const auto& row : r.rows)
    t.add({i64(row.trial), i64(row.length), i64(row.dim), row.r, row.dp_seminorm, row.oracle_seminorm, row.dp_norm,
           row.oracle_norm, row.error});
  json m = {{"instances", r.rows.size()},
            {"max_length", p.max_length},
            {"max_error", num(r.max_error)},
            {"tolerance", p.tolerance},
            {"failures", r.failures}};
  return make(1, "varnorm_oracle", r.pass(), std::move(m), std::move(t));
}

CriterionResult to_result(const LemmaReport& r, const LemmaParams& p) {
  Table t({"lemma", "trial", "length", "dim", "blocks", "r", "lhs", "rhs", "ratio"});
  for (const auto& row : r.rows)
    t.add({i64(row.lemma), i64(row.trial), i64(row.length), i64(row.dim), i64(row.blocks), row.r, row.lhs, row.rhs,
           row.ratio});
  json m = {{"instances_per_lemma", p.instances},
            {"product", lemma_json(r.product)},
            {"product_constant", p.product_constant},
            {"aggregation", lemma_json(r.aggregation)},
            {"splitting", lemma_json(r.splitting)}};
  return make(2, "lemma_suite", r.pass(), std::move(m), std::move(t));
}

CriterionResult to_result(const WindowIdentityReport& r, const WindowIdentityParams& p) {
  Table t({"trial", "lambda", "k", "rel_error", "rel_error_critical"});
  for (const auto& row : r.rows) t.add({i64(row.trial), row.lambda, i64(row.k), row.rel_error, row.rel_error_critical});
  json m = {{"pairs", r.rows.size()},
            {"oversample_log2", p.oversample_log2},
            {"max_rel_error", num(r.max_error)},
            {"tolerance", p.tolerance},
            {"max_rel_error_critical_sampling", num(r.max_error_critical)}};
  return make(3, "window_identity", r.pass(p.tolerance), std::move(m), std::move(t));
}

CriterionResult to_result(const LowerBoundReport& r) {
  Table t({"N", "best_ratio", "mean_ratio", "f_norm", "sq_ratio"});
  for (const auto& row : r.rows) t.add({i64(row.N), row.best_ratio, row.mean_ratio, row.f_norm, row.sq_ratio});
  json m = {{"p", r.p},
            {"ratio_fit", fit_json(r.ratio_fit)},
            {"target_slope", r.target_slope()},
            {"min_slope", r.target_slope() - 0.05},
            {"norm_fit", fit_json(r.norm_fit)},
            {"norm_target", 1.0 - 1.0 / r.p},
            {"sq_fit", fit_json(r.sq_fit)},
            {"slope_ok", r.slope_ok()},
            {"norm_ok", r.norm_ok()}};
  return make(4, "lower_bound", r.pass(), std::move(m), std::move(t));
}

CriterionResult to_result(const UpperScalingReport& r) {
  Table t({"N", "family", "trial", "ratio", "ratio_control", "lower", "upper", "crude", "pointwise_margin"});
  for (const auto& row : r.trials)
    t.add({i64(row.N), row.family, i64(row.trial), row.ratio, row.ratio_control, row.lower, row.upper, row.crude,
           row.pointwise_margin});
  json best = json::array();
  for (std::size_t i = 0; i < r.N.size(); ++i)
    best.push_back({{"N", r.N[i]}, {"ratio", num(r.best[i])}, {"ratio_control", num(r.best_control[i])}});
  json m = {{"p", r.p},
            {"r", r.r},
            {"control_p", r.control_p},
            {"fit", fit_json(r.fit)},
            {"max_slope", r.upper_edge()},
            {"control_fit", fit_json(r.control_fit)},
            {"control_max_slope", r.control_edge()},
            {"lower_edge", r.lower_edge()},
            {"lower_edge_met", r.fit.slope >= r.lower_edge()},
            {"chain_violations", r.chain_violations},
            {"best", best}};
  return make(5, "upper_scaling", r.pass(), std::move(m), std::move(t));
}

CriterionResult to_result(const EntropyReport& r) {
  Table t({"N", "trial", "kind", "statistic", "ratio"});
  for (const auto& row : r.rows) t.add({i64(row.N), i64(row.trial), row.kind, row.statistic, row.ratio});
  json best = json::array();
  for (std::size_t i = 0; i < r.N.size(); ++i) best.push_back({{"N", r.N[i]}, {"statistic", num(r.best[i])}});
  json m = {{"r", r.r},
            {"fit", fit_json(r.fit)},
            {"target_slope", 0.5 - 1.0 / r.r},
            {"max_slope", r.edge()},
            {"max_ratio", num(r.max_ratio)},
            {"ratio_cap", r.ratio_cap},
            {"best", best}};
  return make(6, "entropy", r.pass(), std::move(m), std::move(t));
}

CriterionResult to_result(const DecompositionReport& r, const DecompositionParams& p) {
  Table t({"set", "tiles", "signal_kind", "initial_size", "strata", "trees", "roundtrip_equal", "check_ok",
           "check_ok_parsed", "max_residual_ratio", "max_bessel", "selection_failures"});
  for (const auto& row : r.rows)
    t.add({i64(row.set), i64(row.tiles), i64(row.signal_kind), row.initial_size, i64(row.strata), i64(row.trees),
           i64(row.roundtrip_equal), i64(row.check_ok), i64(row.check_ok_parsed), row.max_residual_ratio,
           row.max_bessel, i64(row.selection_failures)});
  json m = {{"sets", r.rows.size()},
            {"max_tiles", p.suite.max_tiles},
            {"failures", r.failures},
            {"max_bessel_ratio", num(r.max_bessel)},
            {"max_residual_ratio", num(r.max_residual_ratio)},
            {"lambda_multiples", p.lambda_multiples}};
  return make(7, "decomposition_audit", r.pass(), std::move(m), std::move(t));
}

CriterionResult to_result(const CountingReport& r) {
  Table t({"tree", "tiles", "top_k", "levels", "flanks_disjoint", "counting_ratio", "bmo", "local_bound"});
  for (const auto& row : r.rows)
    t.add({i64(row.tree), i64(row.tiles), i64(row.top_k), i64(row.levels), i64(row.flanks_disjoint),
           row.counting_ratio, row.bmo, row.local_bound});
  json m = {{"trees", r.rows.size()},
            {"flank_failures", r.flank_failures},
            {"max_counting_ratio", num(r.max_counting)},
            {"counting_bound", r.counting_bound},
            {"max_bmo", num(r.max_bmo)},
            {"bmo_bound", r.bmo_bound},
            {"max_local_average", num(r.max_local)},
            {"max_bmo_over_local", num(r.max_bmo_over_local)}};
  return make(8, "counting_audit", r.pass(), std::move(m), std::move(t));
}

CriterionResult to_result(const ExceptionalAuditReport& r) {
  Table t({"pair", "lambda", "measure_F", "measure_E", "bound_E", "tiles_in", "tiles_kept", "strata", "size_kept",
           "measure_E_prime", "max_off_exceptional", "bound_value", "samples", "violations", "tops_unique",
           "identity_error"});
  double max_identity = 0.0;
  bool unique = true;
  for (const auto& row : r.rows) {
    t.add({i64(row.pair), row.lambda, row.measure_F, row.measure_E, row.bound_E, i64(row.tiles_in),
           i64(row.tiles_kept), i64(row.strata), row.size_kept, row.measure_E_prime, row.max_off, row.bound_value,
           i64(row.samples), i64(row.violations), i64(row.tops_unique), row.identity_error});
    max_identity = std::max(max_identity, row.identity_error);
    unique = unique && row.tops_unique;
  }
  json m = {{"cases", r.rows.size()},
            {"violations", r.violations},
            {"E_bound_failures", r.E_bound_failures},
            {"worst_value_over_bound", num(r.worst_margin)},
            {"max_identity_error", num(max_identity)},
            {"tops_unique", unique}};
  return make(9, "exceptional_audit", r.pass(), std::move(m), std::move(t));
}

CriterionResult run_criterion(int id, const SuiteParams& s) {
  switch (id) {
    case 1: return to_result(run_variation_oracle(s.variation, s.seed), s.variation);
    case 2: return to_result(run_lemma_suite(s.lemmas, s.seed), s.lemmas);
    case 3: return to_result(run_window_identity(s.window, s.seed), s.window);
    case 4: return to_result(run_lower_bound(s.lower, s.seed));
    case 5: return to_result(run_upper_scaling(s.upper, s.seed));
    case 6: return to_result(run_entropy_scaling(s.entropy, s.seed));
    case 7: return to_result(run_decomposition_audit(s.decomposition, s.seed), s.decomposition);
    case 8: return to_result(run_counting_audit(s.counting, s.seed));
    case 9: return to_result(run_exceptional_audit(s.exceptional, s.seed));
    default: throw Error("run_criterion: criterion " + std::to_string(id) + " has no experiment");
  }
}

std::vector<CriterionResult> run_suite(const SuiteParams& params, const std::vector<int>& only) {
  std::vector<CriterionResult> out;
  for (int id = 1; id < kCriteria; ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    out.push_back(run_criterion(id, params));
  }
  return out;
}

std::string fingerprint(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << r.id << ' ' << r.pass << ' ' << r.metrics.dump() << '\n';
    r.table.write_csv(os);
  }
  return os.str();
}

json summary_json(const SuiteParams& params, const std::vector<CriterionResult>& results) {
  json criteria = json::array();
  bool all = true;
  for (const auto& r : results) {
    criteria.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"output", r.stem}, {"metrics", r.metrics}});
    all = all && r.pass;
  }
  return {{"seed", params.seed}, {"rng", CounterRng::kAlgorithm}, {"criteria", criteria}, {"all_pass", all}};
}

void add_determinism(json& summary, std::optional<bool> determinism) {
  if (determinism) {
    summary["criteria"].push_back({{"id", 10},
                                   {"name", criterion_name(10)},
                                   {"pass", *determinism},
                                   {"metrics", {{"method", "suite repeated in process, outputs compared byte for byte"}}}});
    summary["all_pass"] = summary["all_pass"].get<bool>() && *determinism;
  } else {
    summary["criteria"].push_back({{"id", 10}, {"name", criterion_name(10)}, {"pass", nullptr}, {"status", "not_run"}});
  }
}

void write_table(const std::filesystem::path& dir, const std::string& format, const std::string& stem,
                 const Table& table) {
  if (format == "csv") {
    std::ofstream out(dir / (stem + ".csv"), std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / (stem + ".csv")).string());
    table.write_csv(out);
  } else if (format == "json") {
    std::ofstream out(dir / (stem + ".json"), std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / (stem + ".json")).string());
    out << table.to_json().dump(1) << '\n';
  } else {
    throw Error("unknown output format '" + format + "'");
  }
}

void write_outputs(const std::filesystem::path& dir, const std::string& format,
                   const std::vector<CriterionResult>& results, const json& summary) {
  std::filesystem::create_directories(dir);
  for (const auto& r : results) write_table(dir, format, r.stem, r.table);
  std::ofstream out(dir / "summary.json", std::ios::binary);
  if (!out) throw Error("cannot write " + (dir / "summary.json").string());
  out << summary.dump(2) << '\n';
}

}  // namespace maxmult::harness
