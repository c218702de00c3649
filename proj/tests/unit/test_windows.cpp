#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "maxmult/expsum.hpp"
#include "maxmult/harness/generators.hpp"
#include "maxmult/rng.hpp"
#include "maxmult/windows.hpp"
#include "support.hpp"

using namespace maxmult;
using maxmult::test::l2_distance;
using maxmult::test::max_abs;
using maxmult::test::noise;

namespace {

cplx expi(double phase) { return std::polar(1.0, 2.0 * std::numbers::pi * phase); }

// phi_{I,n} on the torus, built bin by bin from its Fourier series without an FFT.
Signal window_in_time(const DyadicGrid& g, const WindowSystem& w, const DyadicInterval& I, double lambda) {
  const double len = I.length();
  std::vector<double> freqs;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double xi = g.frequency(j);
    if (w.profile((xi - lambda) * len) != 0.0) freqs.push_back(xi);
  }
  Signal phi(g);
  for (std::size_t m = 0; m < g.size(); ++m) {
    cplx s = 0.0;
    for (double xi : freqs) s += w.profile((xi - lambda) * len) * expi(xi * g.position(m) - (xi - lambda) * I.center());
    phi[m] = s / g.length();
  }
  return phi;
}

cplx inner(const Signal& f, const Signal& g) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * std::conj(g[i]);
  return s * f.grid().spacing();
}

double rel(const Signal& a, const Signal& b) { return l2_distance(a, b) / lp_norm(b, 2.0); }

}  // namespace

TEST(WindowSystem, CutoffAndProfiles) {
  for (double t = -1.5; t <= 1.5; t += 1.0 / 64) {
    const double c = WindowSystem::cutoff(t);
    if (std::abs(t) <= 0.5) {
      EXPECT_EQ(c, 1.0);
    } else if (std::abs(t) >= 1.0) {
      EXPECT_EQ(c, 0.0);
    } else {
      EXPECT_GT(c, 0.0);
      EXPECT_LT(c, 1.0);
    }
    for (auto shape : {WindowShape::kBumpMatched, WindowShape::kSquaredBump}) {
      const WindowSystem w(shape);
      if (std::abs(t) > 0.5) {
        EXPECT_EQ(w.profile(t), 0.0);
      }
      // psi-hat times the window equals the window
      EXPECT_EQ(WindowSystem::cutoff(t) * w.profile(t), w.profile(t));
    }
  }
  EXPECT_DOUBLE_EQ(WindowSystem().center_value(), 1.0 / std::numbers::pi);
  EXPECT_DOUBLE_EQ(WindowSystem(WindowShape::kBumpMatched, false).center_value(), 1.0);
  EXPECT_DOUBLE_EQ(WindowSystem().center_variation(2.5, 6), 1.0 / std::numbers::pi);

  const WindowSystem sq(WindowShape::kSquaredBump);
  double slope = 0.0;
  const double h = 1e-5;
  for (double t = -0.5; t < 0.5; t += h) slope = std::max(slope, std::abs(sq.profile(t + h) - sq.profile(t)) / h);
  EXPECT_LE(slope, 1.0 + 1e-6);
  EXPECT_GT(slope, 0.99);
}

TEST(WindowCoeff, MatchesTimeDomainSum) {
  const DyadicGrid g(8, 11);
  const FrequencySystem s(g, {1.5}, SystemOptions{-3});
  CounterRng rng(41);
  const Signal f = noise(g, rng);
  for (auto shape : {WindowShape::kBumpMatched, WindowShape::kSquaredBump}) {
    const WindowSystem w(shape);
    for (int k : {-8, -5, -3}) {
      for (std::int64_t idx : {std::int64_t{0}, std::int64_t{1}, (std::int64_t{1} << (8 + k)) - 1}) {
        const DyadicInterval I{k, idx};
        const Signal phi = window_in_time(g, w, I, 1.5);
        const cplx want = inner(f, phi);
        const cplx got = window_coeff(f, I, s, 0, w);
        EXPECT_LT(std::abs(got - want), 1e-10 * std::max(1.0, std::abs(want))) << k << ' ' << idx;
      }
    }
  }
}

TEST(WindowCoeff, SelfAndZero) {
  const DyadicGrid g(8, 11);
  const FrequencySystem s(g, {-2.0}, SystemOptions{-3});
  const WindowSystem w;
  const DyadicInterval I{-4, 5};
  const Signal phi = window_in_time(g, w, I, -2.0);
  const double norm2 = std::pow(lp_norm(phi, 2.0), 2);
  EXPECT_NEAR(std::abs(window_coeff(phi, I, s, 0, w) - norm2), 0.0, 1e-10 * norm2);
  EXPECT_EQ(window_coeff(Signal(g), I, s, 0, w), cplx(0.0));
  EXPECT_THROW(window_coeff(phi, DyadicInterval{-2, 0}, s, 0, w), Error);
  EXPECT_THROW(window_coeff(Signal(DyadicGrid(8, 12)), I, s, 0, w), Error);
}

TEST(WindowCoeff, DecaysAwayFromTheInterval) {
  const DyadicGrid g(10, 14);
  const FrequencySystem s(g, {0.0}, SystemOptions{-3});
  const WindowSystem w;
  const int k = -3;  // |I| = 8
  Signal spike(g);
  spike[g.size() / 2 + 3] = 1.0 / g.spacing();  // x = 512 + small offset
  const DyadicInterval home = DyadicInterval::containing(g.position(g.size() / 2 + 3), k);
  const DyadicInterval near = home;
  const double c0 = std::abs(window_coeff(spike, near, s, 0, w));
  for (std::int64_t d : {16, 32, 50}) {
    const double cd = std::abs(window_coeff(spike, DyadicInterval{k, home.index + d}, s, 0, w));
    EXPECT_LT(cd, 1e-2 * c0) << d;
  }
}

TEST(ScaleCoefficients, AgreeWithWindowCoeff) {
  const DyadicGrid g(9, 13);
  const FrequencySystem s(g, {-1.0, 0.0, 2.0});
  CounterRng rng(42);
  const Signal f = noise(g, rng);
  const WindowSystem w(WindowShape::kSquaredBump);
  const LocalCoefficients coeffs(f, s, w);
  for (int k : s.scales()) {
    EXPECT_EQ(coeffs.count(k), static_cast<std::size_t>(std::ldexp(1.0, 9 + k)));
    for (std::size_t n = 0; n < s.size(); ++n)
      for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(coeffs.count(k)); idx += 1 + idx) {
        const cplx want = window_coeff(f, DyadicInterval{k, idx}, s, n, w);
        EXPECT_LT(std::abs(coeffs.at(k, n, idx) - want), 1e-12 * std::max(1.0, std::abs(want)));
      }
  }
  const auto c = static_cast<std::int64_t>(coeffs.count(-7));
  EXPECT_EQ(coeffs.at(-7, 1, -1), coeffs.at(-7, 1, c - 1));
  EXPECT_THROW(coeffs.row(-7, 3), Error);
  EXPECT_THROW(scale_coefficients(f, [](double) { return 1.0; }, 12, 0.0), Error);
  EXPECT_THROW(scale_coefficients(f, [](double) { return 1.0; }, -10, 0.0), Error);

  std::ostringstream out;
  write_coefficients_csv(out, coeffs);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("k,n,I_index,re,im\n", 0), 0u);
  std::size_t rows = 0;
  for (int k : s.scales()) rows += s.size() * coeffs.count(k);
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), rows + 1);
}

TEST(WindowedExpand, ReproducesTheProjection) {
  const DyadicGrid g(10, 14);
  const FrequencySystem s(g, {-3.0, 0.0, 1.0, 4.0});
  const MultiplierFamily fam(s);
  CounterRng rng(43);
  for (int trial = 0; trial < 4; ++trial) {
    const Signal f = noise(g, rng);
    for (int k : s.scales()) {
      const std::size_t n = static_cast<std::size_t>(trial) % s.size();
      const auto bump = fam.bump(k, n);
      const Signal want = fourier_project(f, std::span<const double>(bump));
      EXPECT_LT(rel(windowed_expand(f, fam, k, n), want), 1e-6);
      const FrequencyInterval omega = s.interval(k, n);
      const Signal other = windowed_expand(f, omega, [](double t) { return 0.5 + t * t; });
      std::vector<double> m(g.size(), 0.0);
      for (std::size_t j = 0; j < g.size(); ++j) {
        const double xi = g.frequency(j);
        if (xi >= omega.lo() && xi <= omega.hi()) m[j] = 0.5 + std::pow((xi - omega.center) / omega.length(), 2);
      }
      EXPECT_LT(rel(other, fourier_project(f, std::span<const double>(m))), 1e-6);
    }
  }
}

TEST(WindowedExpand, CriticalSamplingIsOnlyApproximate) {
  const DyadicGrid g(10, 14);
  const FrequencySystem s(g, {0.0, 1.0});
  const MultiplierFamily fam(s);
  CounterRng rng(44);
  const Signal f = noise(g, rng);
  const auto bump = fam.bump(-8, 1);
  const Signal want = fourier_project(f, std::span<const double>(bump));
  EXPECT_GT(rel(windowed_expand(f, fam, -8, 1, 0), want), 1e-3);
  EXPECT_LT(rel(windowed_expand(f, fam, -8, 1, 2), want), 1e-6);
}

TEST(WindowedExpand, ZeroAndOffSupport) {
  const DyadicGrid g(10, 14);
  const FrequencySystem s(g, {0.0, 1.0});
  const MultiplierFamily fam(s);
  EXPECT_EQ(max_abs(windowed_expand(Signal(g), fam, -7, 0)), 0.0);
  const Signal e = Signal::sample(g, [](double x) { return expi(0.5 * x); });
  EXPECT_LT(max_abs(windowed_expand(e, fam, -7, 1)), 1e-12);
}

TEST(WindowedExpand, Rejects) {
  const DyadicGrid g(10, 14);
  const Signal f(g);
  const auto prof = [](double) { return 1.0; };
  EXPECT_THROW(windowed_expand(f, FrequencyInterval{1e-4, -7}, prof), Error);
  EXPECT_THROW(windowed_expand(f, FrequencyInterval{0.0, -7}, prof, -1), Error);
  EXPECT_THROW(windowed_expand(f, FrequencyInterval{7.5, 0}, prof), Error);
  EXPECT_THROW(windowed_expand(f, FrequencyInterval{0.0, -12}, prof, 0), Error);
}

TEST(MaxExpSum, SingleFrequencyAndConstantPaths) {
  const std::vector<double> one{3.0};
  EXPECT_NEAR(max_exp_sum(VarSequence::scalar({cplx(0.6, -0.8), cplx(0.6, -0.8)}), one), 1.0, 1e-14);

  CounterRng rng(45);
  for (int N : {2, 5, 17}) {
    std::vector<double> lam;
    for (int n = 0; n < N; ++n) lam.push_back(n - N / 2);
    std::vector<cplx> c(static_cast<std::size_t>(N));
    double l2 = 0.0;
    for (auto& v : c) {
      v = rng.complex_normal();
      l2 += std::norm(v);
    }
    const auto seq = VarSequence::vectors({0, 1, 2}, {c, c, c});
    EXPECT_NEAR(max_exp_sum(seq, lam), std::sqrt(l2), 1e-6 * std::sqrt(l2));
    EXPECT_LE(max_exp_sum(seq, lam), rvar_norm_vec(seq, 2.5, static_cast<std::size_t>(N)) * (1 + 1e-12));
  }
}

TEST(MaxExpSum, RatioToVariationBoundStaysSmall) {
  CounterRng rng(46);
  for (int N : {4, 16, 64}) {
    std::vector<double> lam;
    for (int n = 0; n < N; ++n) lam.push_back(n);
    for (int trial = 0; trial < 4; ++trial) {
      CounterRng t = rng.substream(static_cast<std::uint64_t>(N * 10 + trial));
      const auto values = harness::random_sequence(t, 12, static_cast<std::size_t>(N));
      std::vector<std::int64_t> labels(values.size());
      for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<std::int64_t>(i);
      const auto seq = VarSequence::vectors(labels, values);
      const double bound = std::pow(N, 0.5 - 1.0 / 2.5) * rvar_norm_vec(seq, 2.5, static_cast<std::size_t>(N));
      EXPECT_LE(max_exp_sum(seq, lam), 8.0 * bound);
    }
  }
}

TEST(MaxExpSum, Rejects) {
  const std::vector<double> two{0.0, 1.0};
  EXPECT_THROW(max_exp_sum(VarSequence::vectors({}, {}), two), Error);
  EXPECT_THROW(max_exp_sum(VarSequence::scalar({cplx(1.0)}), two), Error);
  EXPECT_THROW(max_exp_sum(VarSequence::vectors({0}, {{1.0, 1.0}}), std::vector<double>{0.0, 2.0}), Error);
  EXPECT_THROW(max_exp_sum(VarSequence::vectors({0}, {{1.0, 1.0}}), two, 0), Error);
}

TEST(VariationSquare, ZeroAndSingleFrequency) {
  const DyadicGrid g(9, 13);
  const FrequencySystem s(g, {0.0});
  const WindowSystem w;
  EXPECT_EQ(max_abs(variation_square_operator(Signal(g), s, w, 2.5)), 0.0);

  CounterRng rng(47);
  const Signal f = noise(g, rng);
  const Signal v = variation_square_operator(f, s, w, 2.5);
  const LocalCoefficients coeffs(f, s, w);
  for (std::size_t m = 0; m < g.size(); m += 37) {
    std::vector<cplx> seq;
    for (int k : s.scales()) seq.push_back(coeffs.at(DyadicInterval::containing(g.position(m), k), 0));
    std::reverse(seq.begin(), seq.end());  // order does not change the norm
    EXPECT_EQ(v[m].real(), rvar_norm(VarSequence::scalar(std::vector<cplx>(seq.rbegin(), seq.rend())), 2.5));
  }
  EXPECT_THROW(variation_square_operator(f, s, w, 2.0), Error);
}

TEST(VariationSquare, L2RatioDoesNotGrowWithN) {
  const DyadicGrid g(9, 16);
  const WindowSystem w;
  CounterRng rng(48);
  std::vector<double> ratios;
  for (int N : {4, 16, 64}) {
    std::vector<double> lam;
    for (int n = 0; n < N; ++n) lam.push_back(n - N / 2);
    const FrequencySystem s(g, lam);
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      CounterRng t = rng.substream(static_cast<std::uint64_t>(N * 7 + trial));
      const Signal f = harness::random_test_signal(s, t, 1);
      worst = std::max(worst, lp_norm(variation_square_operator(f, s, w, 2.5), 2.0) / lp_norm(f, 2.0));
    }
    ratios.push_back(worst);
  }
  for (double r : ratios) EXPECT_LT(r, 1.0);
  EXPECT_LT(ratios.back(), 2.0 * ratios.front());
}

TEST(LocalReduce, ZeroSignal) {
  const DyadicGrid g(9, 13);
  const FrequencySystem s(g, {0.0, 1.0, 2.0});
  const MultiplierFamily fam(s);
  const LocalReduction red = local_reduce(Signal(g), fam, WindowSystem(), DyadicInterval{0, 3}, 2.5, 1.5);
  EXPECT_EQ(red.lhs, 0.0);
  EXPECT_EQ(red.rhs, 0.0);
  EXPECT_EQ(red.tail, 0.0);
}

TEST(LocalReduce, SingleScaleSingleFrequency) {
  const DyadicGrid g(7, 12);
  const FrequencySystem s(g, {0.0});
  ASSERT_EQ(s.scales().size(), 1u);
  const MultiplierFamily fam(s);
  CounterRng rng(49);
  const Signal f = noise(g, rng);
  // J = [64, 65) starts at the center of the only interval of length 128
  const LocalReduction red = local_reduce(f, fam, WindowSystem(), DyadicInterval{0, 64}, 2.5, 1.5);
  EXPECT_GT(red.rhs, 0.0);
  EXPECT_LE(red.lhs, 1.05 * red.rhs);
  EXPECT_GE(red.lhs, 0.95 * red.rhs);
  EXPECT_LT(red.tail, 1e-25 * red.rhs);
}

TEST(LocalReduce, RandomRatiosAreModerate) {
  const DyadicGrid g(9, 13);
  const FrequencySystem s(g, {-2.0, -1.0, 0.0, 1.0, 2.0});
  const MultiplierFamily fam(s, BumpKind::kCos2, true, random_unimodular_weights(s, 9));
  CounterRng rng(50);
  double worst = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    const Signal f = harness::random_test_signal(s, rng, trial % 2);
    for (std::int64_t j : {0, 100, 333}) {
      const LocalReduction red = local_reduce(f, fam, WindowSystem(), DyadicInterval{0, j}, 2.5, 1.5);
      EXPECT_LE(red.expsum_lp, red.expsum_l2 * (1 + 1e-12));  // Hoelder on a unit interval
      if (red.rhs > 0) worst = std::max(worst, red.lhs / red.rhs);
    }
  }
  EXPECT_GT(worst, 0.0);
  EXPECT_LT(worst, 16.0);
}

TEST(LocalReduce, Rejects) {
  const DyadicGrid g(9, 13);
  const Signal f(g);
  const MultiplierFamily fam(FrequencySystem(g, {0.0, 1.0}));
  const WindowSystem w;
  EXPECT_THROW(local_reduce(f, fam, w, DyadicInterval{1, 0}, 2.5, 1.5), Error);
  EXPECT_THROW(local_reduce(f, fam, w, DyadicInterval{0, 512}, 2.5, 1.5), Error);
  EXPECT_THROW(local_reduce(f, fam, w, DyadicInterval{0, 0}, 2.0, 1.5), Error);
  const MultiplierFamily wide(FrequencySystem(g, {0.0, 2.0}));
  EXPECT_THROW(local_reduce(f, wide, w, DyadicInterval{0, 0}, 2.5, 1.5), Error);
}

TEST(MartingaleCheck, ConstantSignal) {
  const DyadicGrid g(2, 10);
  const Signal c = Signal::sample(g, [](double) { return cplx(2.0); });
  const MartingaleReport rep = martingale_variation_check(c, WindowSystem(), 2.5, 1.5);
  EXPECT_NEAR(rep.lepingle_ratio, 1.0, 1e-12);
  EXPECT_NEAR(rep.window_lhs, rep.f_norm / std::numbers::pi, 1e-12);
  EXPECT_EQ(rep.scales, 10);
  EXPECT_THROW(martingale_variation_check(c, WindowSystem(), 2.0, 1.5), Error);
  EXPECT_THROW(martingale_variation_check(c, WindowSystem(), 2.5, 1.0), Error);
}

TEST(MartingaleCheck, StepRatiosStableUnderRefinement) {
  std::vector<double> win, lep;
  for (int s = 10; s <= 13; ++s) {
    const DyadicGrid g(2, s);
    const Signal step = Signal::sample(g, [](double x) { return x < 1.375 ? cplx(1.0) : cplx(-1.0); });
    const MartingaleReport rep = martingale_variation_check(step, WindowSystem(), 2.5, 1.5);
    EXPECT_GE(rep.lepingle_ratio, 1.0 - 1e-12);
    EXPECT_GT(rep.window_ratio, 0.0);
    win.push_back(rep.window_ratio);
    lep.push_back(rep.lepingle_ratio);
  }
  for (std::size_t i = 1; i < win.size(); ++i) {
    EXPECT_LT(win[i], 1.25 * win[0]);
    EXPECT_LT(lep[i], 1.25 * lep[0]);
  }
}
