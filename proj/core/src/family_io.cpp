#include "json.hpp"

#include "maxmult/error.hpp"
#include "maxmult/multiplier.hpp"

namespace maxmult {

using nlohmann::json;

FamilySpec parse_family_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("family spec: ") + e.what());
  }
  if (!j.is_object()) throw Error("family spec: expected a JSON object");
  FamilySpec spec;
  try {
    spec.lambdas = j.at("lambdas").get<std::vector<double>>();
    spec.weight_mode = j.value("weight_mode", spec.weight_mode);
    spec.bump = j.value("bump", spec.bump);
    spec.strict_adapted = j.value("strict_adapted", spec.strict_adapted);
    spec.seed = j.value("seed", spec.seed);
    if (j.contains("weights")) {
      for (const auto& w : j.at("weights")) {
        spec.weights.push_back({w.at("k").get<int>(), w.at("n").get<std::size_t>(),
                                cplx(w.at("re").get<double>(), w.value("im", 0.0))});
      }
    }
  } catch (const json::exception& e) {
    throw Error(std::string("family spec: ") + e.what());
  }
  if (spec.weight_mode != "ones" && spec.weight_mode != "random_unimodular" && spec.weight_mode != "file") {
    throw Error("family spec: unknown weight_mode '" + spec.weight_mode + "'");
  }
  if (spec.bump != "cos2" && spec.bump != "indicator") {
    throw Error("family spec: unknown bump '" + spec.bump + "'");
  }
  return spec;
}

std::string family_spec_to_json(const FamilySpec& spec) {
  json j;
  j["lambdas"] = spec.lambdas;
  j["weight_mode"] = spec.weight_mode;
  j["bump"] = spec.bump;
  j["strict_adapted"] = spec.strict_adapted;
  j["seed"] = spec.seed;
  json ws = json::array();
  for (const auto& w : spec.weights) {
    ws.push_back({{"k", w.k}, {"n", w.n}, {"re", w.value.real()}, {"im", w.value.imag()}});
  }
  j["weights"] = std::move(ws);
  return j.dump(2);
}

MultiplierFamily build_family(const DyadicGrid& grid, const FamilySpec& spec) {
  FrequencySystem system(grid, spec.lambdas);
  const BumpKind bump = spec.bump == "indicator" ? BumpKind::kIndicator : BumpKind::kCos2;
  const std::size_t count = system.scales().size() * system.size();
  if (spec.weight_mode == "ones") return MultiplierFamily(system, bump, spec.strict_adapted);
  if (spec.weight_mode == "random_unimodular") {
    return MultiplierFamily(system, bump, spec.strict_adapted,
                            random_unimodular_weights(system, spec.seed));
  }
  if (spec.weight_mode != "file") throw Error("family spec: unknown weight_mode '" + spec.weight_mode + "'");

  // Lambdas are sorted inside the system; map FamilySpec's n through that order.
  std::vector<cplx> weights(count, cplx(0.0));
  std::vector<bool> seen(count, false);
  for (const auto& w : spec.weights) {
    if (w.n >= spec.lambdas.size()) throw Error("family spec: weight index n out of range");
    const double lam = spec.lambdas[w.n];
    std::size_t sorted_n = 0;
    while (system.lambda(sorted_n) != lam) ++sorted_n;
    const std::size_t slot = system.scale_index(w.k) * system.size() + sorted_n;
    if (seen[slot]) throw Error("family spec: duplicate weight entry");
    seen[slot] = true;
    weights[slot] = w.value;
  }
  for (bool s : seen) {
    if (!s) throw Error("family spec: file mode needs a weight for every (k, n)");
  }
  return MultiplierFamily(system, bump, spec.strict_adapted, std::move(weights));
}

}  // namespace maxmult
