#include <cmath>

#include "maxmult/harness/experiments.hpp"
#include "maxmult/multiplier.hpp"
#include "maxmult/rng.hpp"
#include "maxmult/windows.hpp"

namespace maxmult::harness {
namespace {

constexpr std::uint64_t kWindowStream = 3;

double rel_l2(const Signal& got, const Signal& ref) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    num += std::norm(got[i] - ref[i]);
    den += std::norm(ref[i]);
  }
  return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace

WindowIdentityReport run_window_identity(const WindowIdentityParams& params, std::uint64_t seed) {
  const DyadicGrid grid(params.length_log2, params.samples_log2);
  const CounterRng base = CounterRng(seed).substream(kWindowStream);
  const double amp = bump_amplitude(true);
  const auto profile = [amp](double t) { return amp * cos2_profile(t); };
  // keep 10 omega well inside the band at the coarsest frequency scale used
  const double reach = 0.75 * grid.nyquist();
  const auto per_unit = static_cast<std::int64_t>(std::ldexp(1.0, params.length_log2));

  WindowIdentityReport report;
  for (std::size_t t = 0; t < params.pairs; ++t) {
    CounterRng rng = base.substream(t);
    const auto span = static_cast<std::uint64_t>(2.0 * reach * static_cast<double>(per_unit));
    const double lambda =
        static_cast<double>(static_cast<std::int64_t>(rng.below(span)) - static_cast<std::int64_t>(span / 2)) /
        static_cast<double>(per_unit);
    // frequency scales from two bins up to 2^-7
    const int k = -params.length_log2 + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(params.length_log2 - 7)));
    const Signal f = Signal::sample(grid, [&](double) { return rng.complex_normal(); });

    Signal ref(grid), got(grid), critical(grid);
    if (t % 2 == 0) {
      const FrequencyInterval omega{lambda, k};
      ref = fourier_project(f, canonical_bump(grid, omega, true));
      got = windowed_expand(f, omega, profile, params.oversample_log2);
      critical = windowed_expand(f, omega, profile, 0);
    } else {
      const MultiplierFamily family(FrequencySystem(grid, {lambda}));
      ref = fourier_project(f, family.bump(k, 0));
      got = windowed_expand(f, family, k, 0, params.oversample_log2);
      critical = windowed_expand(f, family, k, 0, 0);
    }
    WindowIdentityRow row{t, lambda, k, rel_l2(got, ref), rel_l2(critical, ref)};
    report.max_error = std::max(report.max_error, row.rel_error);
    report.max_error_critical = std::max(report.max_error_critical, row.rel_error_critical);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace maxmult::harness
