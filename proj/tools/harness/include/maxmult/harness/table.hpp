#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace maxmult::harness {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Column-oriented record set written either as CSV or as a JSON array of objects.
/// Doubles are printed with %.17g in CSV so output bytes depend only on the values.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  explicit Table(std::vector<std::string> cols = {}) : columns(std::move(cols)) {}
  /// Throws if the row width does not match the header.
  void add(std::vector<Cell> row);

  void write_csv(std::ostream& out) const;
  nlohmann::json to_json() const;
};

std::string format_double(double v);

}  // namespace maxmult::harness
