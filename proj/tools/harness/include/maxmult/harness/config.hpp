#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace maxmult::harness {

/// Flat `key = value` configuration. Lines starting with '#' are comments,
/// lists are comma separated. Lookups fall back to the supplied default.
class Config {
 public:
  Config() = default;

  static Config parse(std::string_view text);
  static Config load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

  std::string text(const std::string& key, const std::string& fallback) const;
  double real(const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;
  std::uint64_t u64(const std::string& key, std::uint64_t fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<double> reals(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<int> ints(const std::string& key, const std::vector<int>& fallback) const;

  /// Throws on any key outside `known`, so typos do not silently fall back.
  void require_known(const std::set<std::string>& known) const;

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace maxmult::harness
