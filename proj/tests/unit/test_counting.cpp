#include <gtest/gtest.h>

#include <cmath>

#include "maxmult/counting.hpp"
#include "maxmult/exceptional.hpp"
#include "maxmult/harness/experiments.hpp"
#include "maxmult/harness/generators.hpp"
#include "maxmult/rng.hpp"
#include "support.hpp"

using namespace maxmult;

namespace {

FrequencySystem small_system() { return harness::tile_suite_system({11, 14, 4, 60}); }

// Maximal dyadic I inside I_T whose tripled interval holds no I_s, by scanning every
// dyadic subinterval down to two scales below the finest tile.
std::vector<DyadicInterval> maximal_oracle(const Tree& T) {
  int finest = T.top.I.k;
  for (const auto& s : T.tiles) finest = std::max(finest, s.I.k);
  auto good = [&](const DyadicInterval& I) {
    for (const auto& s : T.tiles)
      if (s.I.start() >= I.start() - I.length() && s.I.end() <= I.end() + I.length()) return false;
    return true;
  };
  std::vector<DyadicInterval> out;
  for (int k = T.top.I.k; k <= finest + 2; ++k) {
    const std::int64_t per = std::int64_t{1} << (k - T.top.I.k);
    for (std::int64_t i = 0; i < per; ++i) {
      const DyadicInterval I{k, T.top.I.index * per + i};
      if (good(I) && (I == T.top.I || !good(I.parent()))) out.push_back(I);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.start() < b.start(); });
  return out;
}

double mu_oracle(const CountingSets& sets, int j, double x, double length) {
  double total = 0.0;
  for (const auto& lvl : sets.levels) {
    double inner = 0.0;
    for (double y : lvl.boundary) inner += std::pow(1.0 + std::ldexp(1.0, lvl.j) * periodic_distance(x, y, length), -100.0);
    total += std::exp2(-std::abs(lvl.j - j) / 100.0) * inner;
  }
  return total;
}

}  // namespace

TEST(CountingSets, SingleTileSpanningTheTop) {
  const Tile top{{-10, 1}, 0};
  const CountingSets sets = counting_sets(Tree{top, {top}});
  EXPECT_EQ(sets.maximal, maximal_oracle(Tree{top, {top}}));
  ASSERT_EQ(sets.maximal.size(), 4u);
  for (const auto& I : sets.maximal) EXPECT_EQ(I.k, -8);
  EXPECT_EQ(sets.level(-11), nullptr);  // 2^-j longer than I_T
  const CountingLevel* lvl = sets.level(-10);
  ASSERT_NE(lvl, nullptr);
  ASSERT_EQ(lvl->components.size(), 1u);
  EXPECT_EQ(lvl->components[0].first, top.I.start());
  EXPECT_EQ(lvl->components[0].second, top.I.end());
  EXPECT_EQ(lvl->boundary, (std::vector<double>{top.I.start(), top.I.end()}));
  ASSERT_NE(sets.level(-9), nullptr);
  EXPECT_EQ(sets.level(-8), nullptr);
  EXPECT_DOUBLE_EQ(counting_ratio(sets), 2.0 + 1.0);  // levels -10 and -9
  EXPECT_THROW(counting_sets(Tree{top, {}}), Error);
}

TEST(CountingSets, RandomTreesAgainstScan) {
  const FrequencySystem sys = small_system();
  CounterRng rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    const Tree T = harness::random_tree(sys, rng, 30);
    const CountingSets sets = counting_sets(T);
    EXPECT_EQ(sets.maximal, maximal_oracle(T));
    for (const auto& lvl : sets.levels) {
      EXPECT_GE(lvl.j, T.top.I.k);
      double covered = 0.0;
      for (const auto& I : lvl.pieces) {
        EXPECT_GT(I.k, lvl.j);
        covered += I.length();
      }
      double span = 0.0;
      for (const auto& [lo, hi] : lvl.components) {
        span += hi - lo;
        EXPECT_GE(lo, T.top.I.start());
        EXPECT_LE(hi, T.top.I.end());
      }
      EXPECT_DOUBLE_EQ(covered, span);  // components are unions of the pieces
      for (std::size_t c = 1; c < lvl.components.size(); ++c)
        EXPECT_LT(lvl.components[c - 1].second, lvl.components[c].first);
    }
    EXPECT_TRUE(flanks_disjoint(flanks(sets, true)));
    EXPECT_TRUE(flanks_disjoint(flanks(sets, false)));
    EXPECT_LE(counting_ratio(sets), 12.0);
  }
}

TEST(Flanks, DisjointnessDetector) {
  EXPECT_TRUE(flanks_disjoint({{0, 0.0, 1.0}, {0, 1.0, 2.0}}));
  EXPECT_FALSE(flanks_disjoint({{0, 0.0, 1.5}, {1, 1.0, 2.0}}));
  EXPECT_TRUE(flanks_disjoint({}));
}

TEST(Weights, EmptyAndSingleTile) {
  const DyadicGrid g(11, 14);
  EXPECT_EQ(maxmult::test::max_abs(wt_function(Tree{Tile{{-9, 0}, 0}, {}}, g)), 0.0);

  const Tile s{{-9, 1}, 0};
  const Tree T{s, {s}};
  const CountingSets sets = counting_sets(T);
  const Signal mu = mu_weight(sets, s.k(), g);
  double integral = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.position(i);
    const double want = mu_oracle(sets, s.k(), x, g.length());
    EXPECT_NEAR(mu[i].real(), want, 1e-12 * std::max(want, 1e-18));
    integral += want * std::pow(chi_tilde(s.I, x, g.length()), 2);
  }
  const double value = integral * g.spacing() / s.I.length();
  const Signal w = wt_function(T, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.position(i);
    const bool inside = x >= s.I.start() && x < s.I.end();
    EXPECT_NEAR(w[i].real(), inside ? value : 0.0, 1e-12 * value);
  }
}

TEST(Weights, RandomTreesHaveBoundedOscillation) {
  const FrequencySystem sys = small_system();
  CounterRng rng(72);
  for (int trial = 0; trial < 10; ++trial) {
    const Tree T = harness::random_tree(sys, rng, 30);
    const Signal w = wt_function(T, sys.grid());
    const double bmo = dyadic_bmo(w);
    EXPECT_TRUE(std::isfinite(bmo));
    EXPECT_LE(bmo, 2.0);
    EXPECT_LE(bmo, 2.0 * local_average_bound(w, T.top.I) + 1e-15);
  }
}

TEST(DyadicBmo, Examples) {
  const DyadicGrid g(0, 8);
  EXPECT_EQ(dyadic_bmo(Signal::sample(g, [](double) { return cplx(3.0, 1.0); })), 0.0);
  EXPECT_NEAR(dyadic_bmo(Signal::sample(g, [](double x) { return cplx(x < 0.5 ? 1.0 : -1.0); })), 1.0, 1e-15);

  CounterRng rng(73);
  const Signal f = maxmult::test::noise(g, rng);
  EXPECT_LE(dyadic_bmo(f), 2.0 * maxmult::test::max_abs(f));

  // exhaustive oracle on a small random real signal
  const DyadicGrid small(0, 5);
  Signal h(small);
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = rng.normal();
  double want = 0.0;
  for (std::size_t w = 1; w <= h.size(); w *= 2)
    for (std::size_t a = 0; a < h.size(); a += w) {
      double avg = 0.0, osc = 0.0;
      for (std::size_t i = a; i < a + w; ++i) avg += h[i].real() / static_cast<double>(w);
      for (std::size_t i = a; i < a + w; ++i) osc += std::abs(h[i].real() - avg) / static_cast<double>(w);
      want = std::max(want, osc);
    }
  EXPECT_NEAR(dyadic_bmo(h), want, 1e-14);
}

TEST(LocalAverage, Examples) {
  const DyadicGrid g(2, 6);
  Signal f(g);
  f[5] = 8.0;
  EXPECT_DOUBLE_EQ(local_average_bound(f, DyadicInterval{0, 0}), 8.0);
  EXPECT_DOUBLE_EQ(local_average_bound(f, DyadicInterval{0, 1}), 0.0);
}

TEST(Exceptional, EmptyFAndRejects) {
  const FrequencySystem sys = small_system();
  CounterRng rng(74);
  const TileSet S = harness::random_convex_tiles(sys, rng, 30);
  const Signal zero(sys.grid());
  const ExceptionalReport rep = exceptional_sets(S, zero, sys, WindowSystem(), ExceptionalOptions{});
  EXPECT_EQ(rep.measure_F, 0.0);
  EXPECT_EQ(rep.measure_E, 0.0);
  EXPECT_EQ(rep.measure_E_prime, 0.0);
  EXPECT_EQ(rep.violations, 0u);
  EXPECT_EQ(rep.max_off_exceptional, 0.0);
  EXPECT_EQ(rep.tiles_kept, S.size());

  ExceptionalOptions big;
  big.lambda = 1.0;
  EXPECT_THROW(exceptional_sets(S, zero, sys, WindowSystem(), big), Error);
  Signal bad(sys.grid());
  bad[3] = 0.5;
  EXPECT_THROW(exceptional_sets(S, bad, sys, WindowSystem(), ExceptionalOptions{}), Error);
}

TEST(Exceptional, PointwiseBoundOffTheExceptionalSet) {
  const FrequencySystem sys = small_system();
  CounterRng rng(75);
  const TileSet S = harness::random_convex_tiles(sys, rng, 60);
  const Signal F = harness::random_sparse_indicator(sys.grid(), rng);
  for (double lambda : {0.25, 0.0625}) {
    ExceptionalOptions opt;
    opt.lambda = lambda;
    const ExceptionalReport rep = exceptional_sets(S, F, sys, WindowSystem(), opt);
    EXPECT_GT(rep.measure_F, 0.0);
    EXPECT_LE(rep.measure_E, rep.bound_E);
    EXPECT_TRUE(rep.E_bound_ok);
    EXPECT_TRUE(rep.size_halved);
    EXPECT_EQ(rep.violations, 0u);
    EXPECT_LE(rep.max_off_exceptional, rep.bound_value);
    EXPECT_GT(rep.samples_checked, 0u);
    EXPECT_TRUE(rep.tops_unique);
    EXPECT_LT(rep.identity_error, 1e-12);
    EXPECT_LE(rep.measure_union, rep.measure_E + rep.measure_E_prime + 1e-12);
  }
}
