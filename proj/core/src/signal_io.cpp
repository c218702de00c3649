#include "maxmult/signal_io.hpp"

#include <bit>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace maxmult {

void write_signal_csv(std::ostream& out, const Signal& f) {
  out << "index,re,im\n" << std::setprecision(17);
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << i << ',' << f[i].real() << ',' << f[i].imag() << '\n';
  }
}

Signal read_signal_csv(std::istream& in, int length_log2) {
  std::string line;
  std::vector<cplx> values;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line.starts_with("index")) continue;
    std::istringstream fields(line);
    std::string index, re, im;
    if (!std::getline(fields, index, ',') || !std::getline(fields, re, ',') ||
        !std::getline(fields, im, ',')) {
      throw Error("signal CSV: malformed row " + std::to_string(row));
    }
    if (std::stoull(index) != values.size()) throw Error("signal CSV: rows out of order at " + index);
    values.emplace_back(std::stod(re), std::stod(im));
    ++row;
  }
  if (values.empty() || !std::has_single_bit(values.size())) {
    throw Error("signal CSV: sample count must be a nonzero power of two");
  }
  const int samples_log2 = std::countr_zero(values.size());
  return Signal(DyadicGrid(length_log2, samples_log2), std::move(values));
}

std::string signal_to_json(const Signal& f) {
  nlohmann::json j;
  j["length_log2"] = f.grid().length_log2();
  j["samples_log2"] = f.grid().samples_log2();
  auto& re = j["re"] = nlohmann::json::array();
  auto& im = j["im"] = nlohmann::json::array();
  for (const auto& v : f.values()) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return j.dump();
}

Signal signal_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("signal JSON: ") + e.what());
  }
  if (!j.contains("length_log2") || !j.contains("samples_log2") || !j.contains("re")) {
    throw Error("signal JSON: missing length_log2, samples_log2 or re");
  }
  DyadicGrid grid(j["length_log2"].get<int>(), j["samples_log2"].get<int>());
  const auto& re = j["re"];
  const bool has_im = j.contains("im");
  if (re.size() != grid.size() || (has_im && j["im"].size() != grid.size())) {
    throw Error("signal JSON: value arrays do not match samples_log2");
  }
  std::vector<cplx> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = cplx(re[i].get<double>(), has_im ? j["im"][i].get<double>() : 0.0);
  }
  return Signal(grid, std::move(values));
}

Signal load_signal(const std::string& path, int csv_length_log2) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  if (path.ends_with(".json")) {
    std::stringstream buffer;
    buffer << in.rdbuf();
    return signal_from_json(buffer.str());
  }
  return read_signal_csv(in, csv_length_log2);
}

void save_signal(const std::string& path, const Signal& f) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  if (path.ends_with(".json")) {
    out << signal_to_json(f) << '\n';
  } else {
    write_signal_csv(out, f);
  }
}

}  // namespace maxmult
