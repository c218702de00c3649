#pragma once

#include <iosfwd>
#include <string>

#include "maxmult/grid.hpp"

namespace maxmult {

/// CSV with header `index,re,im`, one row per sample.
void write_signal_csv(std::ostream& out, const Signal& f);
/// The CSV carries no grid metadata, so the torus length is supplied.
Signal read_signal_csv(std::istream& in, int length_log2);

/// JSON container {"length_log2", "samples_log2", "re": [...], "im": [...]}.
std::string signal_to_json(const Signal& f);
Signal signal_from_json(const std::string& text);

Signal load_signal(const std::string& path, int csv_length_log2 = 0);
void save_signal(const std::string& path, const Signal& f);

}  // namespace maxmult
