// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maxmult/harness/acceptance.hpp"

namespace fs = std::filesystem;
using namespace maxmult::harness;

namespace {

// Wall clock limits; only these two criteria carry one.
double time_limit_seconds(int id) {
  if (id == 1) return 10.0;
  if (id == 4) return 120.0;
  return 0.0;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

int run_process(const std::string& cmd) {
  const int raw = std::system(cmd.c_str());
  if (raw == -1 || !WIFEXITED(raw)) return -1;
  return WEXITSTATUS(raw);
}

bool determinism(const std::string& cli, const fs::path& work, std::uint64_t seed) {
  if (cli.empty()) {
    std::cout << "  needs --cli\n";
    return false;
  }
  const fs::path a = work / "run_a", b = work / "run_b";
  fs::remove_all(a);
  fs::remove_all(b);
  std::string bytes[2];
  const fs::path dirs[2] = {a, b};
  for (int i = 0; i < 2; ++i) {
    const std::string cmd = quote(cli) + " check --seed " + std::to_string(seed) + " --no-repeat --out " +
                            quote(dirs[i].string()) + " > " + quote((work / ("run_" + std::to_string(i) + ".log")).string()) +
                            " 2>&1";
    const int code = run_process(cmd);
    std::cout << "  run " << i << " exit=" << code << '\n';
    // 1 only means some criterion failed; the bytes still have to match.
    if (code != 0 && code != 1) return false;
    bytes[i] = slurp(dirs[i] / "summary.json");
    if (bytes[i].empty()) return false;
  }
  std::cout << "  summary bytes=" << bytes[0].size() << '\n';
  return bytes[0] == bytes[1];
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria 1-10"};
  std::vector<int> only;
  std::string cli;
  std::string work = "acceptance_work";
  std::uint64_t seed = kDefaultSeed;
  app.add_option("--only", only, "criteria to run (default all)")->check(CLI::Range(1, kCriteria));
  app.add_option("--cli", cli, "path to the maxmult binary (criterion 10)");
  app.add_option("--work", work, "scratch directory");
  app.add_option("--seed", seed, "master seed");
  CLI11_PARSE(app, argc, argv);

  if (only.empty())
    for (int id = 1; id <= kCriteria; ++id) only.push_back(id);

  SuiteParams params;
  params.seed = seed;
  bool all = true;
  try {
    fs::create_directories(work);
    for (int id : only) {
      bool pass = false;
      if (id == kCriteria) {
        pass = determinism(cli, work, seed);
      } else {
        const auto t0 = std::chrono::steady_clock::now();
        const CriterionResult r = run_criterion(id, params);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        pass = r.pass;
        std::cout << "  metrics " << r.metrics.dump() << '\n';
        std::cout << "  seconds " << secs << '\n';
        const double limit = time_limit_seconds(id);
        if (limit > 0 && secs >= limit) {
          std::cout << "  over the " << limit << " s limit\n";
          pass = false;
        }
      }
      std::cout << "criterion " << id << " (" << criterion_name(id) << "): " << (pass ? "PASS" : "FAIL") << '\n';
      all = all && pass;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return all ? 0 : 1;
}
