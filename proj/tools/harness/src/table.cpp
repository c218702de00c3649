#include "maxmult/harness/table.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "maxmult/error.hpp"

namespace maxmult::harness {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw Error("table: row width does not match header");
  rows.push_back(std::move(row));
}

void Table::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) out << format_double(v);
            else out << v;
          },
          row[i]);
    }
    out << '\n';
  }
}

nlohmann::json Table::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            // json has no inf/nan, keep them readable as strings
            if constexpr (std::is_same_v<T, double>) {
              if (std::isfinite(v)) obj[columns[i]] = v;
              else obj[columns[i]] = format_double(v);
            } else {
              obj[columns[i]] = v;
            }
          },
          row[i]);
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

}  // namespace maxmult::harness
