#pragma once

#include <vector>

#include "maxmult/frequency_system.hpp"
#include "maxmult/grid.hpp"
#include "maxmult/rng.hpp"
#include "maxmult/tiles.hpp"

namespace maxmult::harness {

/// values[k][n]: `length` entries of dimension `dim`. The shape is drawn at
/// random among iid normals, random walks, small integers (to force ties) and
/// near-constant runs.
std::vector<std::vector<cplx>> random_sequence(CounterRng& rng, std::size_t length, std::size_t dim);

/// Convex closure of random tiles, grown until the next seed would exceed max_tiles.
TileSet random_convex_tiles(const FrequencySystem& system, CounterRng& rng, std::size_t max_tiles);

/// A random tree: a top tile plus a random subfamily of the tiles below it
/// (same n, finer scales). Not necessarily convex.
Tree random_tree(const FrequencySystem& system, CounterRng& rng, std::size_t max_tiles);

/// Complex white noise (kind 0) or a sum of Gaussian wave packets sitting on
/// random tiles of the system (kind 1).
Signal random_test_signal(const FrequencySystem& system, CounterRng& rng, int kind);

/// 1_F for F a union of 1 to 6 random intervals of length 2^-2 .. 2.
Signal random_sparse_indicator(const DyadicGrid& grid, CounterRng& rng);

}  // namespace maxmult::harness
