#include "maxmult/tiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

#include "bins.hpp"
#include "maxmult/variation.hpp"

namespace maxmult {

void validate_tile(const FrequencySystem& system, const Tile& s) {
  if (s.n >= system.size()) throw Error("tile: frequency index out of range");
  if (!system.admissible(s.k())) throw Error("tile: scale " + std::to_string(s.k()) + " is not admissible");
  const auto count = static_cast<std::int64_t>(std::ldexp(1.0, system.grid().length_log2() + s.k()));
  if (s.I.index < 0 || s.I.index >= count) throw Error("tile: time interval outside the torus");
}

namespace {

// Walks the ancestors of s from its parent upward, stopping below scale k_stop.
template <class Fn>
void for_each_ancestor(const Tile& s, int k_stop, Fn&& fn) {
  DyadicInterval I = s.I;
  while (I.k > k_stop) {
    I = I.parent();
    if (!fn(Tile{I, s.n})) return;
  }
}

int coarsest_scale(const TileSet& S) {
  int k = 0;
  bool first = true;
  for (const auto& s : S) {
    if (first || s.k() < k) k = s.k();
    first = false;
  }
  return k;
}

}  // namespace

bool check_convex(const TileSet& S) {
  const int k_stop = coarsest_scale(S);
  for (const auto& s : S) {
    bool gap = false;
    bool ok = true;
    for_each_ancestor(s, k_stop, [&](const Tile& a) {
      const bool in = S.contains(a);
      if (!in) gap = true;
      if (in && gap) ok = false;
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

TileSet convex_closure(const TileSet& S) {
  TileSet out = S;
  const int k_stop = coarsest_scale(S);
  for (const auto& s : S) {
    std::vector<Tile> chain;
    std::size_t keep = 0;
    for_each_ancestor(s, k_stop, [&](const Tile& a) {
      chain.push_back(a);
      if (S.contains(a)) keep = chain.size();
      return true;
    });
    out.insert(chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(keep));
  }
  return out;
}

double chi_tilde(const DyadicInterval& I, double x, double torus_length) noexcept {
  return 1.0 / (1.0 + periodic_distance(x, I.center(), torus_length) / I.length());
}

bool top_rectangles_intersect(const FrequencySystem& system, const Tile& a, const Tile& b) {
  if (!a.I.intersects(b.I)) return false;
  const FrequencyInterval wa = a.omega(system);
  const FrequencyInterval wb = b.omega(system);
  const double ra = 5.0 * wa.length();
  const double rb = 5.0 * wb.length();
  return wa.center - ra <= wb.center + rb && wb.center - rb <= wa.center + ra;
}

SizeTable::SizeTable(const Signal& f, const FrequencySystem& system)
    : f_(f), spectrum_(dft(f)), system_(system) {
  if (!(f.grid() == system.grid())) throw Error("SizeTable: grids differ");
}

const std::vector<Signal>& SizeTable::projections(int k, std::size_t n) const {
  const auto key = std::make_pair(k, n);
  auto it = proj_.find(key);
  if (it != proj_.end()) return it->second;

  const DyadicGrid& grid = f_.grid();
  const FrequencyInterval omega = system_.interval(k, n);
  const double w = omega.length();
  std::vector<double> plateau(grid.size(), 0.0);
  detail::for_each_bin(grid, omega.center - 5.0 * w, omega.center + 5.0 * w, [&](std::size_t bin, double xi) {
    const double d = std::abs(xi - omega.center);
    if (d <= 0.5 * w) {
      plateau[bin] = 1.0;
    } else {
      const double c = std::cos(0.5 * std::numbers::pi * (d - 0.5 * w) / (4.5 * w));
      plateau[bin] = c * c;
    }
  });
  std::vector<double> indicator(grid.size(), 0.0);
  detail::for_each_bin(grid, omega.lo(), omega.hi(), [&](std::size_t bin, double) { indicator[bin] = 1.0; });

  std::vector<Signal> out;
  for (const auto* mult : {&plateau, &indicator}) {
    Signal g(grid);
    for (std::size_t j = 0; j < g.size(); ++j) {
      if ((*mult)[j] != 0.0) g[j] = spectrum_[j] * (*mult)[j];
    }
    out.push_back(idft(g));
  }
  return proj_.emplace(key, std::move(out)).first->second;
}

double SizeTable::tile_size(const Tile& s, int member) const {
  validate_tile(system_, s);
  if (member < 0 || member > 1) throw Error("tile_size: dictionary member must be 0 or 1");
  const Signal& g = projections(s.k(), s.n)[static_cast<std::size_t>(member)];
  const DyadicGrid& grid = f_.grid();
  const double center = s.I.center();
  const double inv_len = 1.0 / s.I.length();
  const double length = grid.length();
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double d = std::abs(static_cast<double>(i) * grid.spacing() - center);
    d = std::min(d, length - d);
    const double c = 1.0 / (1.0 + d * inv_len);
    const double c2 = c * c;
    const double c4 = c2 * c2;
    const double c10 = c4 * c4 * c2;
    acc += c10 * c10 * std::norm(g[i]);
  }
  return std::sqrt(acc * grid.spacing() / s.I.length());
}

double SizeTable::tile_size(const Tile& s) const {
  auto it = sizes_.find(s);
  if (it != sizes_.end()) return it->second;
  const double v = std::max(tile_size(s, 0), tile_size(s, 1));
  sizes_.emplace(s, v);
  return v;
}

double SizeTable::tree_size(const Tree& T) const {
  double v = 0.0;
  for (const auto& s : T.tiles) v = std::max(v, tile_size(s));
  return v;
}

double SizeTable::set_size(const TileSet& S) const {
  double v = 0.0;
  for (const auto& s : S) v = std::max(v, tile_size(s));
  return v;
}

double tile_size(const Tile& s, const Signal& f, const FrequencySystem& system) {
  return SizeTable(f, system).tile_size(s);
}

namespace {

// Longest time interval first, then leftmost, then smallest n.
bool selection_order(const Tile& a, const Tile& b) {
  if (a.k() != b.k()) return a.k() < b.k();
  if (a.I.start() != b.I.start()) return a.I.start() < b.I.start();
  return a.n < b.n;
}

// threshold < 0 makes every tile qualify.
Selection select_impl(const TileSet& S, const SizeTable& sizes, double threshold) {
  std::vector<Tile> candidates;
  for (const auto& s : S) {
    if (threshold < 0.0 || sizes.tile_size(s) > threshold) candidates.push_back(s);
  }
  std::sort(candidates.begin(), candidates.end(), selection_order);

  Selection sel;
  sel.residual = S;
  for (const auto& top : candidates) {
    if (!sel.residual.contains(top)) continue;
    Tree tree{top, {}};
    for (auto it = sel.residual.begin(); it != sel.residual.end();) {
      if (it->n == top.n && top.I.contains(it->I)) {
        tree.tiles.push_back(*it);
        it = sel.residual.erase(it);
      } else {
        ++it;
      }
    }
    sel.forest.push_back(std::move(tree));
  }
  return sel;
}

double sum_top_lengths(const std::vector<Tree>& forest) {
  double total = 0.0;
  for (const auto& t : forest) total += t.top.I.length();
  return total;
}

}  // namespace

Selection select_trees(const TileSet& S, const SizeTable& sizes, double lambda) {
  if (!(lambda > 0.0)) throw Error("select_trees: threshold must be positive");
  const double size = sizes.set_size(S);
  if (size > 2.0 * lambda) {
    throw Error("select_trees: set size " + std::to_string(size) + " exceeds twice the threshold");
  }
  return select_impl(S, sizes, lambda);
}

Decomposition size_decompose(const TileSet& S, const SizeTable& sizes) {
  Decomposition dec;
  dec.input_convex = check_convex(S);
  if (S.empty()) return dec;
  dec.initial_size = sizes.set_size(S);
  if (dec.initial_size == 0.0) {
    dec.residual = S;
    return dec;
  }
  int m = static_cast<int>(std::floor(-std::log2(dec.initial_size)));
  const double floor_value = std::ldexp(dec.initial_size, -kDecomposeFloorLog2);
  TileSet current = S;
  while (!current.empty() && std::ldexp(1.0, -m) >= floor_value) {
    Stratum st;
    st.m = m;
    st.lambda = std::ldexp(1.0, -m - 1);
    Selection sel = select_trees(current, sizes, st.lambda);
    st.forest = std::move(sel.forest);
    st.sum_top_lengths = sum_top_lengths(st.forest);
    current = std::move(sel.residual);
    if (!st.forest.empty()) dec.strata.push_back(std::move(st));
    ++m;
  }
  if (!current.empty()) {
    Stratum st;
    st.m = m;
    st.lambda = std::ldexp(1.0, -m - 1);
    st.terminal = true;
    st.forest = select_impl(current, sizes, -1.0).forest;
    st.sum_top_lengths = sum_top_lengths(st.forest);
    dec.strata.push_back(std::move(st));
  }
  return dec;
}

TileSet stratum_tiles(const Stratum& s) {
  TileSet out;
  for (const auto& t : s.forest) out.insert(t.tiles.begin(), t.tiles.end());
  return out;
}

Signal tile_variation(const std::vector<Tile>& tiles, const LocalCoefficients& coeffs, double r) {
  const FrequencySystem& system = coeffs.system();
  const DyadicGrid& grid = system.grid();
  // Per n: scale -> (interval index -> coefficient).
  std::vector<std::map<int, std::unordered_map<std::int64_t, cplx>>> by_n(system.size());
  for (const auto& s : tiles) {
    validate_tile(system, s);
    by_n[s.n][s.k()][s.I.index] = coeffs.at(s.I, s.n);
  }
  Signal out(grid);
  std::vector<cplx> seq;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.position(i);
    double energy = 0.0;
    for (const auto& scales : by_n) {
      seq.clear();
      for (const auto& [k, row] : scales) {
        auto it = row.find(DyadicInterval::containing(x, k).index);
        if (it != row.end()) seq.push_back(it->second);
      }
      if (seq.empty()) continue;
      const double v = rvar_norm(std::span<const cplx>(seq), r);
      energy += v * v;
    }
    out[i] = std::sqrt(energy);
  }
  return out;
}

Signal tree_variation(const Tree& T, const LocalCoefficients& coeffs, double r) {
  return tile_variation(T.tiles, coeffs, r);
}

Signal tree_variation(const Tree& T, const Signal& f, const FrequencySystem& system, const WindowSystem& windows,
                      double r) {
  return tree_variation(T, LocalCoefficients(f, system, windows), r);
}

}  // namespace maxmult
