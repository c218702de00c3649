#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "maxmult/frequency_system.hpp"
#include "maxmult/grid.hpp"
#include "maxmult/windows.hpp"

namespace maxmult {

/// s(I, n) = I x [lambda_n - 2^{k-1}, lambda_n + 2^{k-1}] with |I| = 2^-k.
struct Tile {
  DyadicInterval I;
  std::size_t n = 0;

  int k() const noexcept { return I.k; }
  FrequencyInterval omega(const FrequencySystem& system) const { return {system.lambda(n), I.k}; }

  auto operator<=>(const Tile&) const = default;
};

using TileSet = std::set<Tile>;

/// Throws unless the tile has an admissible scale, a valid n and I inside the torus.
void validate_tile(const FrequencySystem& system, const Tile& s);

/// True iff for every s, s'' in S with the same n and I_s inside I_s'', every
/// tile s' with that n and I_s inside I_s' inside I_s'' is in S as well.
bool check_convex(const TileSet& S);

/// Smallest convex superset.
TileSet convex_closure(const TileSet& S);

struct Tree {
  Tile top;
  std::vector<Tile> tiles;  // includes the top when it belongs to the tree
};

/// Sizes relative to a fixed f. The supremum over adapted multipliers is taken over
/// two members: a cos^2 plateau (1 on omega_s, 0 outside 10 omega_s) and 1 on omega_s.
/// Projections are cached per (k, n), tile sizes per tile.
class SizeTable {
 public:
  SizeTable(const Signal& f, const FrequencySystem& system);

  const Signal& signal() const noexcept { return f_; }
  const FrequencySystem& system() const noexcept { return system_; }

  /// |I_s|^{-1/2} || chi_{I_s}^10 T_m f ||_2 maximized over the dictionary.
  double tile_size(const Tile& s) const;
  /// Same quantity for a single dictionary member (0 = plateau, 1 = indicator).
  double tile_size(const Tile& s, int member) const;
  double tree_size(const Tree& T) const;
  double set_size(const TileSet& S) const;

 private:
  const std::vector<Signal>& projections(int k, std::size_t n) const;

  Signal f_;
  Signal spectrum_;
  FrequencySystem system_;
  mutable std::map<std::pair<int, std::size_t>, std::vector<Signal>> proj_;
  mutable std::map<Tile, double> sizes_;
};

double tile_size(const Tile& s, const Signal& f, const FrequencySystem& system);

/// chi~_I(x) = (1 + d(x, c(I)) / |I|)^{-1} with d the distance on the torus.
double chi_tilde(const DyadicInterval& I, double x, double torus_length) noexcept;

/// Top rectangles I_T x 10 omega_T intersect (closed frequency intervals).
bool top_rectangles_intersect(const FrequencySystem& system, const Tile& a, const Tile& b);

struct Selection {
  std::vector<Tree> forest;
  TileSet residual;
};

/// Greedy selection: repeatedly take a remaining tile of size > lambda with the longest
/// time interval (ties: leftmost, then smallest n) and remove the maximal tree below it.
/// Throws if set_size(S) > 2 lambda.
Selection select_trees(const TileSet& S, const SizeTable& sizes, double lambda);

struct Stratum {
  int m = 0;
  double lambda = 0.0;     // selection threshold 2^{-m-1}
  bool terminal = false;   // sweeps every remaining tile into trees, no threshold
  std::vector<Tree> forest;
  double sum_top_lengths = 0.0;
};

struct Decomposition {
  std::vector<Stratum> strata;
  TileSet residual;  // nonempty only when every tile has size 0
  bool input_convex = true;
  double initial_size = 0.0;
};

inline constexpr int kDecomposeFloorLog2 = 20;

/// Iterated selection at thresholds 2^{-m-1}, m from floor(-log2 size(S)) until
/// 2^{-m} < size(S) 2^{-20}; anything left then forms a terminal stratum.
Decomposition size_decompose(const TileSet& S, const SizeTable& sizes);

/// Tiles of a stratum as a set.
TileSet stratum_tiles(const Stratum& s);

/// V^r norm at x of the scale-ordered coefficients of the tiles containing x.
/// Tiles are grouped by n and aggregated in l^2(N), so a single tree gives V_T f.
Signal tile_variation(const std::vector<Tile>& tiles, const LocalCoefficients& coeffs, double r);

Signal tree_variation(const Tree& T, const LocalCoefficients& coeffs, double r);
Signal tree_variation(const Tree& T, const Signal& f, const FrequencySystem& system, const WindowSystem& windows,
                      double r);

}  // namespace maxmult
