#include "maxmult/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "maxmult/error.hpp"

namespace maxmult::harness {
namespace {

std::string trim(std::string_view s) {
  const auto* ws = " \t\r";
  const auto a = s.find_first_not_of(ws);
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(ws);
  return std::string(s.substr(a, b - a + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& raw) {
  T value{};
  const auto* end = raw.data() + raw.size();
  auto [ptr, ec] = std::from_chars(raw.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw Error("config: bad number for '" + key + "': '" + raw + "'");
  return value;
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(raw);
  while (std::getline(in, item, ',')) {
    auto t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw Error("config line " + std::to_string(lineno) + ": expected key = value");
    auto key = trim(std::string_view(t).substr(0, eq));
    auto value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw Error("config line " + std::to_string(lineno) + ": empty key");
    if (cfg.has(key)) throw Error("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    cfg.entries_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void Config::set(const std::string& key, const std::string& value) { entries_[key] = value; }

std::string Config::text(const std::string& key, const std::string& fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double Config::real(const std::string& key, double fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : parse_number<double>(key, it->second);
}

std::int64_t Config::integer(const std::string& key, std::int64_t fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : parse_number<std::int64_t>(key, it->second);
}

std::uint64_t Config::u64(const std::string& key, std::uint64_t fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : parse_number<std::uint64_t>(key, it->second);
}

bool Config::flag(const std::string& key, bool fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw Error("config: bad boolean for '" + key + "': '" + it->second + "'");
}

std::vector<double> Config::reals(const std::string& key, const std::vector<double>& fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::vector<double> out;
  for (const auto& item : split_list(it->second)) out.push_back(parse_number<double>(key, item));
  return out;
}

std::vector<int> Config::ints(const std::string& key, const std::vector<int>& fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::vector<int> out;
  for (const auto& item : split_list(it->second)) out.push_back(parse_number<int>(key, item));
  return out;
}

void Config::require_known(const std::set<std::string>& known) const {
  for (const auto& [key, value] : entries_)
    if (!known.count(key)) throw Error("config: unknown key '" + key + "'");
}

}  // namespace maxmult::harness
