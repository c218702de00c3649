#include "maxmult/exceptional.hpp"

#include <algorithm>
#include <cmath>

namespace maxmult {

namespace {

std::pair<std::size_t, std::size_t> sample_range(const DyadicGrid& grid, const DyadicInterval& I) {
  return {static_cast<std::size_t>(std::llround(I.start() / grid.spacing())),
          static_cast<std::size_t>(std::llround(I.end() / grid.spacing()))};
}

double measure(const std::vector<char>& mask, double spacing) {
  return static_cast<double>(std::count(mask.begin(), mask.end(), 1)) * spacing;
}

}  // namespace

ExceptionalReport exceptional_sets(const TileSet& S, const Signal& indicator, const FrequencySystem& system,
                                   const WindowSystem& windows, const ExceptionalOptions& opt) {
  if (!(opt.lambda > 0.0 && opt.lambda < 1.0)) throw Error("exceptional_sets: lambda must lie in (0, 1)");
  const DyadicGrid& grid = system.grid();
  if (!(indicator.grid() == grid)) throw Error("exceptional_sets: grids differ");
  for (std::size_t i = 0; i < indicator.size(); ++i) {
    const cplx v = indicator[i];
    if (v != cplx(0.0) && v != cplx(1.0)) throw Error("exceptional_sets: f must be an indicator");
  }
  const double h = grid.spacing();
  const std::size_t m_samples = grid.size();
  ExceptionalReport rep;
  rep.tiles_in = S.size();

  std::vector<char> in_F(m_samples);
  for (std::size_t i = 0; i < m_samples; ++i) in_F[i] = indicator[i].real() == 1.0 ? 1 : 0;
  rep.measure_F = measure(in_F, h);

  const Signal maximal = hl_maximal(indicator);
  const double c = opt.threshold_constant;
  std::vector<char> in_E(m_samples);
  for (std::size_t i = 0; i < m_samples; ++i) in_E[i] = maximal[i].real() >= c * opt.lambda ? 1 : 0;
  rep.measure_E = measure(in_E, h);
  rep.bound_E = 2.0 * std::pow(c, -opt.p) * rep.measure_F / std::pow(opt.lambda, opt.p);
  rep.E_bound_ok = rep.measure_E <= rep.bound_E;

  TileSet kept;
  for (const auto& s : S) {
    validate_tile(system, s);
    const auto [lo, hi] = sample_range(grid, s.I);
    bool outside = false;
    for (std::size_t i = lo; i < hi && !outside; ++i) outside = in_E[i] == 0;
    if (outside) kept.insert(s);
  }
  rep.tiles_kept = kept.size();

  const SizeTable sizes(indicator, system);
  rep.size_kept = sizes.set_size(kept);
  rep.size_halved = rep.size_kept <= 0.5 * opt.lambda;
  rep.decomposition = size_decompose(kept, sizes);

  const LocalCoefficients coeffs(indicator, system, windows);
  std::vector<char> in_E_prime(m_samples, 0);
  for (const auto& st : rep.decomposition.strata) {
    const double threshold = std::pow(opt.lambda, 0.5 - opt.epsilon) * std::exp2(-0.5 * st.m);
    std::vector<double> combined(m_samples, 0.0);
    for (const auto& tree : st.forest) {
      const Signal v = tree_variation(tree, coeffs, opt.r);
      TreeException te{st.m, tree.top, threshold, 0.0};
      const auto [lo, hi] = sample_range(grid, tree.top.I);
      for (std::size_t i = lo; i < hi; ++i) {
        if (v[i].real() > threshold) {
          te.measure += h;
          in_E_prime[i] = 1;
        }
      }
      for (std::size_t i = 0; i < m_samples; ++i) combined[i] += std::norm(v[i]);
      rep.trees.push_back(te);
    }
    for (std::size_t a = 0; a < st.forest.size(); ++a) {
      for (std::size_t b = a + 1; b < st.forest.size(); ++b) {
        const Tile& ta = st.forest[a].top;
        const Tile& tb = st.forest[b].top;
        if (ta.n == tb.n && ta.I.intersects(tb.I)) rep.tops_unique = false;
      }
    }
    const TileSet tiles = stratum_tiles(st);
    const Signal vs = tile_variation(std::vector<Tile>(tiles.begin(), tiles.end()), coeffs, opt.r);
    for (std::size_t i = 0; i < m_samples; ++i) {
      rep.identity_error = std::max(rep.identity_error, std::abs(vs[i].real() - std::sqrt(combined[i])));
    }
  }
  rep.measure_E_prime = measure(in_E_prime, h);

  rep.bound_value = std::pow(opt.lambda, 1.0 - opt.epsilon) * std::sqrt(static_cast<double>(system.size()));
  const Signal v_kept = tile_variation(std::vector<Tile>(kept.begin(), kept.end()), coeffs, opt.r);
  std::size_t union_count = 0;
  for (std::size_t i = 0; i < m_samples; ++i) {
    if (in_E[i] || in_E_prime[i]) {
      ++union_count;
      continue;
    }
    ++rep.samples_checked;
    const double v = v_kept[i].real();
    rep.max_off_exceptional = std::max(rep.max_off_exceptional, v);
    if (v > rep.bound_value) ++rep.violations;
  }
  rep.measure_union = static_cast<double>(union_count) * h;
  return rep;
}

}  // namespace maxmult
