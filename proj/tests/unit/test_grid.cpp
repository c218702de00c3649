#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "maxmult/grid.hpp"
#include "maxmult/rng.hpp"
#include "support.hpp"

using namespace maxmult;
using maxmult::test::noise;

namespace {

// O(M^2) unitary DFT, independent of the FFT.
std::vector<cplx> direct_dft(const Signal& f) {
  const std::size_t m = f.size();
  std::vector<cplx> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    cplx s{};
    for (std::size_t t = 0; t < m; ++t) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>((j * t) % m) / static_cast<double>(m);
      s += f[t] * cplx(std::cos(ang), std::sin(ang));
    }
    out[j] = s / std::sqrt(static_cast<double>(m));
  }
  return out;
}

}  // namespace

TEST(DyadicGrid, Geometry) {
  const DyadicGrid g(3, 7);
  EXPECT_EQ(g.size(), 128u);
  EXPECT_DOUBLE_EQ(g.length(), 8.0);
  EXPECT_DOUBLE_EQ(g.spacing(), 1.0 / 16);
  EXPECT_DOUBLE_EQ(g.frequency_resolution(), 1.0 / 8);
  EXPECT_DOUBLE_EQ(g.nyquist(), 8.0);
  EXPECT_DOUBLE_EQ(g.frequency(1), 0.125);
  EXPECT_DOUBLE_EQ(g.frequency(127), -0.125);
  EXPECT_DOUBLE_EQ(g.frequency(64), -8.0);
  EXPECT_EQ(g.bin(-0.125), 127u);
  EXPECT_EQ(g.bin(2.0), 16u);
  EXPECT_TRUE(g.on_frequency_grid(0.375));
  EXPECT_FALSE(g.on_frequency_grid(0.3));
  EXPECT_THROW(g.bin(0.3), Error);
  EXPECT_THROW(g.bin(8.0), Error);
}

TEST(Dft, MatchesDirectSum) {
  const DyadicGrid g(0, 6);
  CounterRng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const Signal f = noise(g, rng);
    const Signal F = dft(f);
    const auto ref = direct_dft(f);
    for (std::size_t j = 0; j < F.size(); ++j) EXPECT_NEAR(std::abs(F[j] - ref[j]), 0.0, 1e-12);
    const Signal back = idft(F);
    EXPECT_LT(maxmult::test::max_abs_diff(back, f), 1e-12);
  }
}

TEST(Dft, ParsevalRandom) {
  const DyadicGrid g(2, 10);
  CounterRng rng(12);
  const Signal f = noise(g, rng);
  const Signal F = dft(f);
  double a = 0, b = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    a += std::norm(f[i]);
    b += std::norm(F[i]);
  }
  EXPECT_NEAR(a, b, 1e-12 * a);
}

TEST(Dft, ConstantAndExponential) {
  const DyadicGrid g(1, 6);
  const Signal c = Signal::sample(g, [](double) { return cplx(2.0, -1.0); });
  const Signal C = dft(c);
  for (std::size_t j = 1; j < C.size(); ++j) EXPECT_LT(std::abs(C[j]), 1e-12);
  EXPECT_NEAR(std::abs(C[0]), std::sqrt(5.0) * 8.0, 1e-12);

  const double lambda = 3.5;  // on the grid: resolution 1/2
  const Signal e = Signal::sample(g, [&](double x) { return std::polar(1.0, 2 * std::numbers::pi * lambda * x); });
  const Signal E = dft(e);
  const std::size_t hit = g.bin(lambda);
  for (std::size_t j = 0; j < E.size(); ++j) {
    if (j == hit) EXPECT_NEAR(std::abs(E[j]), 8.0, 1e-12);
    else EXPECT_LT(std::abs(E[j]), 1e-12);
  }
}

TEST(FourierProject, IdentityZeroAndBand) {
  const DyadicGrid g(2, 9);
  CounterRng rng(13);
  const Signal f = noise(g, rng);
  std::vector<double> one(g.size(), 1.0), zero(g.size(), 0.0), band(g.size(), 0.0);
  for (std::size_t j = 0; j < g.size(); ++j)
    if (g.frequency(j) >= -3.0 && g.frequency(j) < 5.25) band[j] = 1.0;

  EXPECT_LT(maxmult::test::max_abs_diff(fourier_project(f, std::span<const double>(one)), f), 1e-12);
  EXPECT_EQ(maxmult::test::max_abs(fourier_project(f, std::span<const double>(zero))), 0.0);

  const double got = std::pow(lp_norm(fourier_project(f, std::span<const double>(band)), 2.0), 2);
  const double want = maxmult::test::band_energy(f, [](double xi) { return xi >= -3.0 && xi < 5.25; });
  EXPECT_NEAR(got, want, 1e-12 * want);
}

TEST(FourierProject, Linear) {
  const DyadicGrid g(0, 8);
  CounterRng rng(14);
  const Signal f = noise(g, rng), h = noise(g, rng);
  std::vector<cplx> m1(g.size()), m2(g.size()), msum(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    m1[j] = rng.complex_normal();
    m2[j] = rng.complex_normal();
    msum[j] = m1[j] + m2[j];
  }
  const cplx a(0.3, -1.2);
  Signal comb(g);
  for (std::size_t i = 0; i < g.size(); ++i) comb[i] = f[i] + a * h[i];

  const Signal lhs = fourier_project(comb, std::span<const cplx>(m1));
  const Signal pf = fourier_project(f, std::span<const cplx>(m1)), ph = fourier_project(h, std::span<const cplx>(m1));
  Signal rhs(g);
  for (std::size_t i = 0; i < g.size(); ++i) rhs[i] = pf[i] + a * ph[i];
  EXPECT_LT(maxmult::test::max_abs_diff(lhs, rhs), 1e-12);

  const Signal s = fourier_project(f, std::span<const cplx>(msum));
  const Signal q = fourier_project(f, std::span<const cplx>(m2));
  for (std::size_t i = 0; i < g.size(); ++i) rhs[i] = pf[i] + q[i];
  EXPECT_LT(maxmult::test::max_abs_diff(s, rhs), 1e-12);
}

TEST(FourierProject, RejectsWrongLength) {
  const DyadicGrid g(0, 4);
  const Signal f(g);
  std::vector<double> m(8, 1.0);
  EXPECT_THROW(fourier_project(f, std::span<const double>(m)), Error);
}

TEST(LpNorm, Basics) {
  const DyadicGrid unit(0, 8);
  const Signal c = Signal::sample(unit, [](double) { return cplx(0.0, -3.0); });
  for (double p : {1.0, 1.5, 2.0, 4.0}) EXPECT_NEAR(lp_norm(c, p), 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(lp_norm(c, INFINITY), 3.0);
  EXPECT_THROW(lp_norm(c, 0.5), Error);

  const DyadicGrid g(3, 10);
  CounterRng rng(15);
  const Signal f = noise(g, rng);
  const double parseval = maxmult::test::band_energy(f, [](double) { return true; });
  EXPECT_NEAR(lp_norm(f, 2.0), std::sqrt(parseval), 1e-12 * std::sqrt(parseval));
}

TEST(LpNorm, BandLimitedGrowth) {
  // f-hat = indicator of [0, N): ||f||_p grows like N^{1 - 1/p}.
  const double p = 1.5;
  const DyadicGrid g(6, 16);
  std::vector<double> logs, vals;
  for (int N = 8; N <= 256; N *= 2) {
    Signal spec(g);
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double xi = g.frequency(j);
      if (xi >= 0 && xi < N) spec[j] = 1.0;
    }
    logs.push_back(std::log(N));
    vals.push_back(std::log(lp_norm(idft(spec), p)));
  }
  const double n = static_cast<double>(logs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    sx += logs[i];
    sy += vals[i];
    sxx += logs[i] * logs[i];
    sxy += logs[i] * vals[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  EXPECT_NEAR(slope, 1.0 - 1.0 / p, 0.05);
}

TEST(MartingaleAvg, ConstantFinestAndMean) {
  const DyadicGrid g(0, 6);
  const Signal c = Signal::sample(g, [](double) { return cplx(1.5, 0.5); });
  for (int k = 0; k <= 6; ++k) EXPECT_LT(maxmult::test::max_abs_diff(martingale_avg(c, k), c), 1e-15);

  CounterRng rng(16);
  const Signal f = noise(g, rng);
  EXPECT_EQ(maxmult::test::max_abs_diff(martingale_avg(f, 6), f), 0.0);

  const Signal step = Signal::sample(g, [](double x) { return x < 0.25 ? cplx(4.0) : cplx(-1.0); });
  const Signal e0 = martingale_avg(step, 0);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(std::abs(e0[i] - cplx(0.25)), 0.0, 1e-15);

  EXPECT_THROW(martingale_avg(f, 7), Error);
  EXPECT_THROW(martingale_avg(f, -1), Error);
}

TEST(MartingaleAvg, ProjectionProperty) {
  const DyadicGrid g(2, 9);
  CounterRng rng(17);
  const Signal f = noise(g, rng);
  for (int j = -2; j <= 7; ++j)
    for (int k = -2; k <= 7; ++k) {
      const Signal lhs = martingale_avg(martingale_avg(f, j), k);
      const Signal rhs = martingale_avg(f, std::min(j, k));
      EXPECT_LT(maxmult::test::max_abs_diff(lhs, rhs), 1e-12) << j << ' ' << k;
    }
}

TEST(HlMaximal, Constant) {
  const DyadicGrid g(1, 7);
  const Signal c = Signal::sample(g, [](double) { return cplx(-2.0, 0.0); });
  const Signal m = hl_maximal(c);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(m[i].real(), 2.0, 1e-12);
}

TEST(HlMaximal, MatchesBruteForceWindows) {
  const DyadicGrid g(1, 7);
  CounterRng rng(18);
  const Signal f = noise(g, rng);
  const Signal m = hl_maximal(f);
  const auto M = static_cast<std::int64_t>(g.size());
  for (std::int64_t x = 0; x < M; ++x) {
    double best = 0.0;
    for (std::int64_t R = 1; 2 * R <= M; R *= 2) {
      double s = 0.0;
      for (std::int64_t t = x - R; t < x + R; ++t) s += std::abs(f[static_cast<std::size_t>(((t % M) + M) % M)]);
      best = std::max(best, s / static_cast<double>(2 * R));
    }
    EXPECT_NEAR(m[static_cast<std::size_t>(x)].real(), best, 1e-12);
    EXPECT_EQ(m[static_cast<std::size_t>(x)].imag(), 0.0);
    // smallest window average
    const double smallest = 0.5 * (std::abs(f[static_cast<std::size_t>((x + M - 1) % M)]) + std::abs(f[static_cast<std::size_t>(x)]));
    EXPECT_GE(m[static_cast<std::size_t>(x)].real(), smallest - 1e-12);
  }
}

TEST(HlMaximal, SpikeProfile) {
  const DyadicGrid g(3, 9);
  const std::size_t x0 = 137;
  const double w = 0.7;
  Signal f(g);
  f[x0] = w / g.spacing();
  const Signal m = hl_maximal(f);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double d = std::max(periodic_distance(g.position(i), g.position(x0), g.length()), g.spacing());
    const double target = w / (2.0 * d);
    EXPECT_LE(m[i].real(), target * (1 + 1e-12)) << i;
    EXPECT_GE(m[i].real(), 0.5 * target * (1 - 1e-12)) << i;
  }
}

TEST(HlMaximal, DominatesHalfDyadicAverage) {
  const DyadicGrid g(2, 9);
  CounterRng rng(19);
  const Signal f = noise(g, rng);
  const Signal m = hl_maximal(f);
  Signal absf(g);
  for (std::size_t i = 0; i < g.size(); ++i) absf[i] = std::abs(f[i]);
  // radius 2^-k must be at most half the torus
  for (int k = -1; k <= 7; ++k) {
    const Signal avg = martingale_avg(absf, k);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_GE(m[i].real(), 0.5 * avg[i].real() - 1e-12) << k;
  }
}

TEST(DyadicInterval, NestedOrDisjoint) {
  for (int k1 = 0; k1 <= 4; ++k1)
    for (int k2 = 0; k2 <= 4; ++k2)
      for (std::int64_t a = 0; a < (1 << k1); ++a)
        for (std::int64_t b = 0; b < (1 << k2); ++b) {
          const DyadicInterval I{k1, a}, J{k2, b};
          const bool overlap = I.start() < J.end() && J.start() < I.end();
          const bool nested = (I.start() <= J.start() && J.end() <= I.end()) ||
                              (J.start() <= I.start() && I.end() <= J.end());
          EXPECT_TRUE(!overlap || nested);
          EXPECT_EQ(I.intersects(J), overlap);
          EXPECT_EQ(I.contains(J), overlap && I.start() <= J.start() && J.end() <= I.end());
        }
}

TEST(DyadicInterval, ContainingAndFamily) {
  const DyadicInterval I = DyadicInterval::containing(0.3, 3);
  EXPECT_EQ(I.k, 3);
  EXPECT_EQ(I.index, 2);
  EXPECT_DOUBLE_EQ(I.start(), 0.25);
  EXPECT_DOUBLE_EQ(I.center(), 0.3125);
  EXPECT_EQ(I.parent(), (DyadicInterval{2, 1}));
  EXPECT_TRUE(I.parent().contains(I));
  EXPECT_TRUE(I.contains(I.child(0)) && I.contains(I.child(1)));
  EXPECT_EQ(DyadicInterval::containing(-0.1, 2).index, -1);
}

TEST(PeriodicDistance, Wraps) {
  EXPECT_DOUBLE_EQ(periodic_distance(0.125, 3.875, 4.0), 0.25);
  EXPECT_DOUBLE_EQ(periodic_distance(1.0, 3.0, 4.0), 2.0);
  EXPECT_DOUBLE_EQ(periodic_distance(0.5, 0.75, 4.0), 0.25);
}
