// maxmult: command line driver for the experiments.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxmult/error.hpp"
#include "maxmult/harness/acceptance.hpp"
#include "maxmult/harness/config.hpp"
#include "maxmult/multiplier.hpp"
#include "maxmult/signal_io.hpp"
#include "maxmult/variation.hpp"

namespace fs = std::filesystem;
using namespace maxmult;
using namespace maxmult::harness;
using nlohmann::json;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "flat key = value config file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "master seed (overrides the config)");
  cmd->add_option("--out", c.out, "output directory (default: out)");
  cmd->add_option("--format", c.format, "table format")->check(CLI::IsMember({"csv", "json"}));
}

struct Resolved {
  Config cfg;
  SuiteParams params;
  fs::path out;
  std::string format;
};

Resolved resolve(const Common& c) {
  Resolved r;
  if (!c.config.empty()) r.cfg = Config::load(c.config);
  r.params = SuiteParams::from_config(r.cfg);
  if (c.seed) r.params.seed = *c.seed;
  r.out = !c.out.empty() ? c.out : r.cfg.text("out", "out");
  r.format = !c.format.empty() ? c.format : r.cfg.text("format", "csv");
  if (r.format != "csv" && r.format != "json") throw Error("format must be csv or json");
  return r;
}

void print_results(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    std::cout << "criterion " << r.id << " (" << r.name << "): " << (r.pass ? "PASS" : "FAIL") << '\n';
}

int finish(const Resolved& r, const std::vector<CriterionResult>& results, json summary) {
  write_outputs(r.out, r.format, results, summary);
  print_results(results);
  std::cout << "wrote " << (r.out / "summary.json").string() << '\n';
  return summary["all_pass"].get<bool>() ? 0 : 1;
}

// CSV: header, then label followed by re,im pairs for each component.
VarSequence read_sequence_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(path + ": empty file");
  std::vector<std::int64_t> labels;
  std::vector<std::vector<cplx>> values;
  std::size_t width = 0;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 3 || cells.size() % 2 == 0)
      throw Error(path + ":" + std::to_string(lineno) + ": expected label followed by re,im pairs");
    if (width == 0) width = cells.size();
    if (cells.size() != width) throw Error(path + ":" + std::to_string(lineno) + ": ragged row");
    try {
      labels.push_back(std::stoll(cells[0]));
      std::vector<cplx> v;
      for (std::size_t i = 1; i + 1 < cells.size(); i += 2) v.emplace_back(std::stod(cells[i]), std::stod(cells[i + 1]));
      values.push_back(std::move(v));
    } catch (const std::logic_error&) {
      throw Error(path + ":" + std::to_string(lineno) + ": bad number");
    }
  }
  if (values.empty()) throw Error(path + ": no rows");
  return VarSequence::vectors(std::move(labels), values);
}

int cmd_varnorm(const Common& c, const std::string& input, const std::vector<double>& rs) {
  const Resolved r = resolve(c);
  const VarSequence x = read_sequence_csv(input);
  Table t({"r", "length", "dim", "seminorm", "norm"});
  for (double order : rs) {
    const double semi = rvar_seminorm(x, order);
    const double norm = rvar_norm(x, order);
    t.add({order, static_cast<std::int64_t>(x.size()), static_cast<std::int64_t>(x.dim()), semi, norm});
    std::cout << "r=" << format_double(order) << " seminorm=" << format_double(semi)
              << " norm=" << format_double(norm) << '\n';
  }
  fs::create_directories(r.out);
  write_table(r.out, r.format, "varnorm", t);
  json summary = {{"command", "varnorm"}, {"input", input}, {"rows", t.to_json()}};
  std::ofstream(r.out / "summary.json", std::ios::binary) << summary.dump(2) << '\n';
  return 0;
}

int cmd_maxop(const Common& c, const std::string& signal_path, int csv_length_log2, const std::string& family_path,
              std::optional<int> k, const std::vector<double>& ps) {
  const Resolved r = resolve(c);
  const Signal f = load_signal(signal_path, csv_length_log2);
  std::ifstream in(family_path);
  if (!in) throw Error("cannot open " + family_path);
  std::stringstream buf;
  buf << in.rdbuf();
  const FamilySpec spec = parse_family_spec(buf.str());
  const MultiplierFamily family = build_family(f.grid(), spec);

  const Signal g = k ? delta_k(f, family, *k) : maximal_delta(f, family);
  Table t({"p", "input_norm", "output_norm", "ratio"});
  for (double p : ps) {
    const double a = lp_norm(f, p), b = lp_norm(g, p);
    t.add({p, a, b, a > 0 ? b / a : 0.0});
    std::cout << "p=" << format_double(p) << " |f|=" << format_double(a) << " |out|=" << format_double(b) << '\n';
  }
  fs::create_directories(r.out);
  write_table(r.out, r.format, "maxop", t);
  if (r.format == "csv") save_signal((r.out / "maxop_signal.csv").string(), g);
  else save_signal((r.out / "maxop_signal.json").string(), g);
  json summary = {{"command", "maxop"},
                  {"operator", k ? "delta_k" : "maximal_delta"},
                  {"scales", std::vector<int>(family.system().scales().begin(), family.system().scales().end())},
                  {"rows", t.to_json()}};
  if (k) summary["k"] = *k;
  std::ofstream(r.out / "summary.json", std::ios::binary) << summary.dump(2) << '\n';
  return 0;
}

int cmd_criteria(const Common& c, const std::vector<int>& ids) {
  const Resolved r = resolve(c);
  const auto results = run_suite(r.params, ids);
  return finish(r, results, summary_json(r.params, results));
}

int cmd_check(const Common& c, const std::vector<int>& only, bool repeat) {
  const Resolved r = resolve(c);
  const auto results = run_suite(r.params, only);
  json summary = summary_json(r.params, results);
  std::optional<bool> same;
  if (repeat) same = fingerprint(run_suite(r.params, only)) == fingerprint(results);
  add_determinism(summary, same);
  const int code = finish(r, results, summary);
  if (same) std::cout << "criterion 10 (determinism): " << (*same ? "PASS" : "FAIL") << '\n';
  return (same && !*same) ? 1 : code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maxmult: variational maximal multiplier experiments"};
  app.require_subcommand(1);

  Common common;

  auto* varnorm = app.add_subcommand("varnorm", "r-variation of a CSV sequence");
  std::string seq_path;
  std::vector<double> orders{2.5};
  varnorm->add_option("--input", seq_path, "CSV: header, then label,re,im[,re,im...] rows")->required();
  varnorm->add_option("--r", orders, "variation orders (repeatable)");
  add_common(varnorm, common);

  auto* maxop = app.add_subcommand("maxop", "apply Delta_k or sup_k |Delta_k| to a signal");
  std::string signal_path, family_path;
  int csv_length_log2 = 0;
  std::optional<int> scale;
  std::vector<double> ps{1.5, 2.0};
  maxop->add_option("--signal", signal_path, "signal file (.json or .csv)")->required();
  maxop->add_option("--length-log2", csv_length_log2, "torus length for CSV signals");
  maxop->add_option("--family", family_path, "multiplier family JSON")->required();
  maxop->add_option("--k", scale, "single scale; omit for the maximal operator");
  maxop->add_option("--p", ps, "L^p exponents to report");
  add_common(maxop, common);

  auto* tiles = app.add_subcommand("tiles", "tile decomposition audit");
  bool tiles_all = false;
  tiles->add_flag("--all", tiles_all, "also run the counting-set and exceptional-set audits");
  add_common(tiles, common);

  auto* expsum = app.add_subcommand("expsum", "maximal exponential sum scaling in N");
  add_common(expsum, common);

  auto* scaling = app.add_subcommand("scaling", "lower and upper N-sweeps");
  std::string which = "both";
  scaling->add_option("--which", which, "lower, upper or both")->check(CLI::IsMember({"lower", "upper", "both"}));
  add_common(scaling, common);

  auto* check = app.add_subcommand("check", "full acceptance suite");
  std::vector<int> only;
  bool no_repeat = false;
  check->add_option("--only", only, "restrict to these criteria (1-9)")->check(CLI::Range(1, 9));
  check->add_flag("--no-repeat", no_repeat, "skip the in-process determinism rerun");
  add_common(check, common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*varnorm) return cmd_varnorm(common, seq_path, orders);
    if (*maxop) return cmd_maxop(common, signal_path, csv_length_log2, family_path, scale, ps);
    if (*tiles) return cmd_criteria(common, tiles_all ? std::vector<int>{7, 8, 9} : std::vector<int>{7});
    if (*expsum) return cmd_criteria(common, {6});
    if (*scaling) {
      if (which == "lower") return cmd_criteria(common, {4});
      if (which == "upper") return cmd_criteria(common, {5});
      return cmd_criteria(common, {4, 5});
    }
    if (*check) return cmd_check(common, only, !no_repeat);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
