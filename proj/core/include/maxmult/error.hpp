#pragma once

#include <stdexcept>

namespace maxmult {

/// Thrown on violated preconditions and malformed input files.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace maxmult
