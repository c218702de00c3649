#include "maxmult/harness/generators.hpp"

#include <cmath>
#include <numbers>

namespace maxmult::harness {

std::vector<std::vector<cplx>> random_sequence(CounterRng& rng, std::size_t length, std::size_t dim) {
  std::vector<std::vector<cplx>> x(length, std::vector<cplx>(dim));
  const auto shape = rng.below(4);
  const double scale = std::exp2(static_cast<double>(rng.below(7)) - 3.0);
  for (std::size_t k = 0; k < length; ++k) {
    for (std::size_t n = 0; n < dim; ++n) {
      cplx v;
      switch (shape) {
        case 0:
          v = rng.complex_normal();
          break;
        case 1:
          v = (k ? x[k - 1][n] / scale : cplx{}) + rng.complex_normal();
          break;
        case 2:
          v = {static_cast<double>(rng.below(3)) - 1.0, static_cast<double>(rng.below(3)) - 1.0};
          break;
        default:
          v = (k && rng.below(3) != 0) ? x[k - 1][n] / scale : rng.complex_normal();
          break;
      }
      x[k][n] = v * scale;
    }
  }
  return x;
}

TileSet random_convex_tiles(const FrequencySystem& system, CounterRng& rng, std::size_t max_tiles) {
  const auto scales = system.scales();
  const int L = system.grid().length_log2();
  TileSet S;
  for (int attempt = 0; attempt < 4 * static_cast<int>(max_tiles); ++attempt) {
    const int k = scales[rng.below(scales.size())];
    const auto count = static_cast<std::uint64_t>(std::ldexp(1.0, L + k));
    Tile s{{k, static_cast<std::int64_t>(rng.below(count))}, static_cast<std::size_t>(rng.below(system.size()))};
    TileSet T = S;
    T.insert(s);
    T = convex_closure(T);
    if (T.size() > max_tiles) break;
    S = std::move(T);
  }
  return S;
}

Tree random_tree(const FrequencySystem& system, CounterRng& rng, std::size_t max_tiles) {
  const auto scales = system.scales();
  const int L = system.grid().length_log2();
  // keep at least one finer scale below the top when there is one
  const auto top_choices = scales.size() > 1 ? scales.size() - 1 : 1;
  const int kt = scales[rng.below(top_choices)];
  const auto count = static_cast<std::uint64_t>(std::ldexp(1.0, L + kt));
  Tile top{{kt, static_cast<std::int64_t>(rng.below(count))}, static_cast<std::size_t>(rng.below(system.size()))};
  Tree T{top, {}};
  if (rng.below(4) != 0) T.tiles.push_back(top);
  const double density = 0.05 + 0.6 * rng.uniform();
  for (int k : scales) {
    if (k <= kt) continue;
    const std::int64_t per = std::int64_t{1} << (k - kt);
    for (std::int64_t i = 0; i < per && T.tiles.size() < max_tiles; ++i) {
      if (rng.uniform() < density) T.tiles.push_back({{k, top.I.index * per + i}, top.n});
    }
  }
  if (T.tiles.empty()) T.tiles.push_back(top);
  return T;
}

Signal random_test_signal(const FrequencySystem& system, CounterRng& rng, int kind) {
  const auto& grid = system.grid();
  if (kind == 0) return Signal::sample(grid, [&](double) { return rng.complex_normal(); });
  Signal f(grid);
  const auto scales = system.scales();
  const int packets = 3 + static_cast<int>(rng.below(6));
  for (int q = 0; q < packets; ++q) {
    const int k = scales[rng.below(scales.size())];
    const double width = std::ldexp(1.0, -k);
    const double c = rng.uniform() * grid.length();
    const double lam = system.lambda(static_cast<std::size_t>(rng.below(system.size())));
    const cplx amp = rng.complex_normal() * std::exp2(static_cast<double>(rng.below(4)));
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double x = grid.position(i);
      const double d = periodic_distance(x, c, grid.length()) / width;
      if (d > 6.0) continue;
      f[i] += amp * std::exp(-std::numbers::pi * d * d) * std::polar(1.0, 2.0 * std::numbers::pi * lam * x);
    }
  }
  return f;
}

Signal random_sparse_indicator(const DyadicGrid& grid, CounterRng& rng) {
  Signal F(grid);
  const int pieces = 1 + static_cast<int>(rng.below(6));
  for (int q = 0; q < pieces; ++q) {
    const double a = rng.uniform() * grid.length();
    const double len = std::ldexp(1.0, -2 + static_cast<int>(rng.below(4)));
    for (std::size_t i = 0; i < F.size(); ++i) {
      const double x = grid.position(i);
      if (x >= a && x < a + len) F[i] = 1.0;
    }
  }
  return F;
}

}  // namespace maxmult::harness
