#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maxmult/frequency_system.hpp"
#include "maxmult/grid.hpp"

namespace maxmult {

enum class BumpKind { kCos2, kIndicator };

/// eta(t) = cos^2(pi t) on |t| <= 1/2, zero elsewhere.
double cos2_profile(double t) noexcept;

/// Amplitude of the canonical bump: 1/pi in strict mode so that the
/// derivative bound |m'| <= 1/|omega| holds literally, 1 otherwise.
double bump_amplitude(bool strict_adapted) noexcept;

/// m_omega(xi) = amplitude * eta((xi - c(omega)) / |omega|) sampled on the DFT bins.
std::vector<double> canonical_bump(const DyadicGrid& grid, const FrequencyInterval& omega,
                                   bool strict_adapted = true);

/// 1 on the half-open [lo, hi) of omega.
std::vector<double> indicator_bump(const DyadicGrid& grid, const FrequencyInterval& omega);

/// Adapted bumps m_omega and complex weights w_omega for every omega in every R_k.
class MultiplierFamily {
 public:
  /// Unit weights.
  explicit MultiplierFamily(FrequencySystem system, BumpKind bump = BumpKind::kCos2,
                            bool strict_adapted = true);
  /// weights[scale_index * N + n] is w for the interval of scale scales()[scale_index] at lambda_n.
  MultiplierFamily(FrequencySystem system, BumpKind bump, bool strict_adapted,
                   std::vector<cplx> weights);

  const FrequencySystem& system() const noexcept { return system_; }
  BumpKind bump_kind() const noexcept { return bump_; }
  bool strict_adapted() const noexcept { return strict_; }

  cplx weight(int k, std::size_t n) const;
  /// m_omega as a function of the normalized offset t = (xi - c) / |omega|.
  double profile(double t) const noexcept;
  double bump_value(int k, std::size_t n, double xi) const;
  std::vector<double> bump(int k, std::size_t n) const;
  /// sum_{omega in R_k} w_omega m_omega on the DFT bins.
  std::vector<cplx> scale_multiplier(int k) const;

 private:
  FrequencySystem system_;
  BumpKind bump_;
  bool strict_;
  std::vector<cplx> weights_;
};

/// Delta_k f = sum_{omega in R_k} w_omega T_{m_omega} f, as one projection.
Signal delta_k(const Signal& f, const MultiplierFamily& family, int k);

/// Pointwise sup over admissible k of |Delta_k f|.
Signal maximal_delta(const Signal& f, const MultiplierFamily& family);

/// max_n || {w_{omega_k} : lambda_n in omega_k} ||_{V^r_k}.
double vstar_norm_weights(const MultiplierFamily& family, double r);
/// max_n || {m_{omega_k}(lambda_n)} ||_{V^r_k}.
double vstar_norm_bumps(const MultiplierFamily& family, double r);

/// f_n: sharp projection onto |xi - lambda_n| < D/10 (everything when N == 1).
Signal band_project(const Signal& f, const FrequencySystem& system, std::size_t n);

/// SQ f = (sum_n |f_n|^2)^{1/2}.
Signal sq_function(const Signal& f, const FrequencySystem& system);

/// Random unimodular weights, one per (scale, n), from a counter-based stream.
std::vector<cplx> random_unimodular_weights(const FrequencySystem& system, std::uint64_t seed);

/// JSON family description:
/// {lambdas, weight_mode: "ones"|"random_unimodular"|"file", bump: "cos2"|"indicator",
///  strict_adapted, seed, weights: [{k, n, re, im}, ...] (file mode)}.
struct FamilySpec {
  std::vector<double> lambdas;
  std::string weight_mode = "ones";
  std::string bump = "cos2";
  bool strict_adapted = true;
  std::uint64_t seed = 0;
  struct Weight {
    int k;
    std::size_t n;
    cplx value;
  };
  std::vector<Weight> weights;
};

FamilySpec parse_family_spec(const std::string& json_text);
std::string family_spec_to_json(const FamilySpec& spec);
MultiplierFamily build_family(const DyadicGrid& grid, const FamilySpec& spec);

}  // namespace maxmult
