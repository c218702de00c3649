#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxmult/harness/config.hpp"
#include "maxmult/harness/experiments.hpp"
#include "maxmult/harness/table.hpp"

namespace maxmult::harness {

inline constexpr int kCriteria = 10;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Every experiment's parameters, filled from a Config (see README for the keys).
struct SuiteParams {
  std::uint64_t seed = kDefaultSeed;
  VariationOracleParams variation;
  LemmaParams lemmas;
  WindowIdentityParams window;
  LowerBoundParams lower;
  UpperScalingParams upper;
  EntropyParams entropy;
  DecompositionParams decomposition;
  CountingParams counting;
  ExceptionalParams exceptional;

  /// Throws on unknown keys or an rng name other than CounterRng::kAlgorithm.
  static SuiteParams from_config(const Config& cfg);
  static std::set<std::string> known_keys();
};

/// One experiment's outcome: pass flag, summary metrics, and its record table.
struct CriterionResult {
  int id = 0;
  std::string name;
  std::string stem;  // output file name without extension
  bool pass = false;
  nlohmann::json metrics;
  Table table;
};

std::string criterion_name(int id);

CriterionResult to_result(const VariationOracleReport& r, const VariationOracleParams& p);
CriterionResult to_result(const LemmaReport& r, const LemmaParams& p);
CriterionResult to_result(const WindowIdentityReport& r, const WindowIdentityParams& p);
CriterionResult to_result(const LowerBoundReport& r);
CriterionResult to_result(const UpperScalingReport& r);
CriterionResult to_result(const EntropyReport& r);
CriterionResult to_result(const DecompositionReport& r, const DecompositionParams& p);
CriterionResult to_result(const CountingReport& r);
CriterionResult to_result(const ExceptionalAuditReport& r);

/// Runs the experiment behind criterion 1..9.
CriterionResult run_criterion(int id, const SuiteParams& params);

/// Criteria 1..9 in order, restricted to `only` when it is nonempty.
std::vector<CriterionResult> run_suite(const SuiteParams& params, const std::vector<int>& only = {});

/// Byte string covering every table and metric, used for the determinism check.
std::string fingerprint(const std::vector<CriterionResult>& results);

/// summary.json content. Holds no timings, so equal inputs give equal bytes.
nlohmann::json summary_json(const SuiteParams& params, const std::vector<CriterionResult>& results);

/// Appends the criterion 10 entry; an empty `determinism` records it as not run.
void add_determinism(nlohmann::json& summary, std::optional<bool> determinism);

/// <stem>.csv or <stem>.json per result (format "csv" or "json"), plus summary.json.
void write_outputs(const std::filesystem::path& dir, const std::string& format,
                   const std::vector<CriterionResult>& results, const nlohmann::json& summary);

void write_table(const std::filesystem::path& dir, const std::string& format, const std::string& stem,
                 const Table& table);

}  // namespace maxmult::harness
