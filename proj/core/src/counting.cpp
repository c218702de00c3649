#include "maxmult/counting.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace maxmult {

const CountingLevel* CountingSets::level(int j) const noexcept {
  for (const auto& l : levels) {
    if (l.j == j) return &l;
  }
  return nullptr;
}

namespace {

bool tripled_holds(const DyadicInterval& I, const DyadicInterval& s) {
  const double len = I.length();
  return s.start() >= I.start() - len && s.end() <= I.end() + len;
}

}  // namespace

CountingSets counting_sets(const Tree& T) {
  if (T.tiles.empty()) throw Error("counting_sets: empty tree");
  CountingSets out;
  out.top = T.top.I;

  std::vector<DyadicInterval> stack{out.top};
  while (!stack.empty()) {
    const DyadicInterval I = stack.back();
    stack.pop_back();
    const bool blocked = std::any_of(T.tiles.begin(), T.tiles.end(),
                                     [&](const Tile& s) { return tripled_holds(I, s.I); });
    if (blocked) {
      stack.push_back(I.child(1));
      stack.push_back(I.child(0));
    } else {
      out.maximal.push_back(I);
    }
  }
  std::sort(out.maximal.begin(), out.maximal.end(),
            [](const DyadicInterval& a, const DyadicInterval& b) { return a.start() < b.start(); });

  int finest = out.top.k;
  for (const auto& I : out.maximal) finest = std::max(finest, I.k);
  for (int j = out.top.k; j < finest; ++j) {
    CountingLevel lvl;
    lvl.j = j;
    for (const auto& I : out.maximal) {
      if (I.k > j) lvl.pieces.push_back(I);
    }
    for (const auto& I : lvl.pieces) {
      if (!lvl.components.empty() && lvl.components.back().second == I.start()) {
        lvl.components.back().second = I.end();
      } else {
        lvl.components.emplace_back(I.start(), I.end());
      }
    }
    for (const auto& [lo, hi] : lvl.components) {
      lvl.boundary.push_back(lo);
      lvl.boundary.push_back(hi);
    }
    if (!lvl.pieces.empty()) out.levels.push_back(std::move(lvl));
  }
  return out;
}

std::vector<Flank> flanks(const CountingSets& sets, bool left) {
  std::vector<Flank> out;
  for (const auto& lvl : sets.levels) {
    const double outer = std::ldexp(1.0, -lvl.j - 1);
    const double inner = std::ldexp(1.0, -lvl.j - 2);
    for (const auto& [lo, hi] : lvl.components) {
      if (left) {
        out.push_back({lvl.j, lo - outer, lo - inner});
      } else {
        out.push_back({lvl.j, hi + inner, hi + outer});
      }
    }
  }
  return out;
}

bool flanks_disjoint(std::vector<Flank> list) {
  std::sort(list.begin(), list.end(), [](const Flank& a, const Flank& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < list.size(); ++i) {
    if (list[i - 1].hi > list[i].lo) return false;
  }
  return true;
}

double counting_ratio(const CountingSets& sets) {
  double total = 0.0;
  for (const auto& lvl : sets.levels) total += std::ldexp(static_cast<double>(lvl.boundary.size()), -lvl.j);
  return total / sets.top.length();
}

namespace {

double inverse_pow100(double x) {
  const double x2 = x * x;
  const double x4 = x2 * x2;
  const double x8 = x4 * x4;
  const double x32 = x8 * x8 * x8 * x8;
  return 1.0 / (x32 * x32 * x32 * x4);
}

// Per level j': sum over boundary points y of (1 + 2^j' d(x, y))^{-100}, terms below the cutoff dropped.
std::vector<std::vector<double>> level_kernels(const CountingSets& sets, const DyadicGrid& grid) {
  const auto m = static_cast<std::int64_t>(grid.size());
  // (1 + u)^{-100} < 1e-30 once u > 10^{0.3} - 1.
  const double reach = std::pow(10.0, 0.3) - 1.0;
  std::vector<std::vector<double>> out;
  for (const auto& lvl : sets.levels) {
    std::vector<double> base(grid.size(), 0.0);
    const double scale = std::ldexp(1.0, lvl.j);
    const double radius = reach / scale;
    for (double y : lvl.boundary) {
      const auto lo = static_cast<std::int64_t>(std::floor((y - radius) / grid.spacing()));
      const auto hi = static_cast<std::int64_t>(std::ceil((y + radius) / grid.spacing()));
      const std::int64_t span = std::min<std::int64_t>(hi - lo, m - 1);
      for (std::int64_t i = lo; i <= lo + span; ++i) {
        const auto idx = static_cast<std::size_t>(((i % m) + m) % m);
        const double d = periodic_distance(grid.position(idx), y, grid.length());
        const double term = inverse_pow100(1.0 + scale * d);
        if (term >= kMuCutoff) base[idx] += term;
      }
    }
    out.push_back(std::move(base));
  }
  return out;
}

Signal combine_levels(const CountingSets& sets, const std::vector<std::vector<double>>& kernels, int j,
                      const DyadicGrid& grid) {
  Signal out(grid);
  for (std::size_t l = 0; l < sets.levels.size(); ++l) {
    const double weight = std::exp2(-std::abs(sets.levels[l].j - j) / 100.0);
    const auto& base = kernels[l];
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (base[i] != 0.0) out[i] += weight * base[i];
    }
  }
  return out;
}

}  // namespace

Signal mu_weight(const CountingSets& sets, int j, const DyadicGrid& grid) {
  return combine_levels(sets, level_kernels(sets, grid), j, grid);
}

Signal wt_function(const Tree& T, const DyadicGrid& grid) {
  Signal out(grid);
  if (T.tiles.empty()) return out;
  const CountingSets sets = counting_sets(T);
  const auto kernels = level_kernels(sets, grid);
  std::map<int, Signal> mu;
  for (const auto& s : T.tiles) {
    auto it = mu.find(s.k());
    if (it == mu.end()) it = mu.emplace(s.k(), combine_levels(sets, kernels, s.k(), grid)).first;
    const Signal& w = it->second;
    const double center = s.I.center();
    const double inv_len = 1.0 / s.I.length();
    double integral = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (w[i].real() == 0.0) continue;
      const double c = 1.0 / (1.0 + periodic_distance(grid.position(i), center, grid.length()) * inv_len);
      integral += w[i].real() * c * c;
    }
    const double value = integral * grid.spacing() / s.I.length();
    const auto first = static_cast<std::size_t>(std::llround(s.I.start() / grid.spacing()));
    const auto last = static_cast<std::size_t>(std::llround(s.I.end() / grid.spacing()));
    for (std::size_t i = first; i < last; ++i) out[i] += value;
  }
  return out;
}

double dyadic_bmo(const Signal& f) {
  const std::size_t m = f.size();
  const bool real = std::all_of(f.values().begin(), f.values().end(), [](cplx v) { return v.imag() == 0.0; });
  double best = 0.0;
  for (std::size_t width = m; width >= 1; width /= 2) {
    for (std::size_t start = 0; start < m; start += width) {
      cplx avg = 0.0;
      for (std::size_t i = start; i < start + width; ++i) avg += f[i];
      avg /= static_cast<double>(width);
      double osc = 0.0;
      if (real) {
        for (std::size_t i = start; i < start + width; ++i) osc += std::abs(f[i].real() - avg.real());
      } else {
        for (std::size_t i = start; i < start + width; ++i) osc += std::abs(f[i] - avg);
      }
      best = std::max(best, osc / static_cast<double>(width));
    }
  }
  return best;
}

double local_average_bound(const Signal& f, const DyadicInterval& I) {
  const DyadicGrid& grid = f.grid();
  const double lo = std::max(0.0, I.start());
  const double hi = std::min(grid.length(), I.end());
  const auto first = static_cast<std::size_t>(std::llround(lo / grid.spacing()));
  const auto last = static_cast<std::size_t>(std::llround(hi / grid.spacing()));
  if (last <= first) return 0.0;
  const std::size_t count = last - first;
  std::vector<double> mag(count);
  for (std::size_t i = 0; i < count; ++i) mag[i] = std::abs(f[first + i]);
  double best = 0.0;
  for (std::size_t width = count; width >= 1; width /= 2) {
    for (std::size_t start = 0; start + width <= count; start += width) {
      double acc = 0.0;
      for (std::size_t i = start; i < start + width; ++i) acc += mag[i];
      best = std::max(best, acc / static_cast<double>(width));
    }
  }
  return best;
}

}  // namespace maxmult
