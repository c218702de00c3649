#pragma once

#include <vector>

#include "maxmult/grid.hpp"

namespace maxmult::harness {

/// r-variation seminorm by enumerating every index subset (every chain).
/// values[k] is the vector at index k; at most 20 entries.
double brute_rvar_seminorm(const std::vector<std::vector<cplx>>& values, double r);

/// sup_k ||x_k|| + brute_rvar_seminorm.
double brute_rvar_norm(const std::vector<std::vector<cplx>>& values, double r);

}  // namespace maxmult::harness
