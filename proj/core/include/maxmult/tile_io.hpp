#pragma once

#include <iosfwd>
#include <string>

#include "maxmult/tiles.hpp"

namespace maxmult {

/// Tiles as [{k, index, n}, ...].
std::string tiles_to_json(const TileSet& S);
TileSet tiles_from_json(const std::string& text);

/// Forests as [{top: {k, index, n}, member_tiles: [...]}, ...].
std::string forest_to_json(const std::vector<Tree>& forest);
std::vector<Tree> forest_from_json(const std::string& text);

/// {initial_size, input_convex, strata: [{m, lambda, terminal, sum_top_lengths, forest}], residual}.
std::string decomposition_to_json(const Decomposition& dec);
Decomposition decomposition_from_json(const std::string& text);

/// One row per stratum: lambda,m,num_trees,sum_IT,bessel_ratio with
/// bessel_ratio = sum_IT lambda^2 / ||f||_2^2.
void write_strata_csv(std::ostream& out, const Decomposition& dec, double f_norm2);

}  // namespace maxmult
