#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "maxmult/frequency_system.hpp"
#include "maxmult/grid.hpp"
#include "maxmult/multiplier.hpp"

namespace maxmult {

enum class WindowShape {
  kBumpMatched,  // phi-hat = the canonical multiplier profile, shifted to the origin
  kSquaredBump,  // phi-hat = a cos^4(pi t), a chosen so |phi-hat'| <= 1
};

/// Window transforms phi-hat (supported in [-1/2, 1/2]) and the mother cutoff
/// psi-hat. Windows here do not depend on (k, n).
class WindowSystem {
 public:
  explicit WindowSystem(WindowShape shape = WindowShape::kBumpMatched, bool strict_adapted = true);

  WindowShape shape() const noexcept { return shape_; }
  bool strict_adapted() const noexcept { return strict_; }

  double profile(double t) const noexcept;
  double center_value() const noexcept { return profile(0.0); }
  /// ||phi-hat^{(k)}(0)||_{V^r} over `num_scales` scales.
  double center_variation(double r, std::size_t num_scales) const;

  /// psi-hat: 1 on [-1/2, 1/2], cos^2 ramp down to 0 at |t| = 1, 0 beyond.
  static double cutoff(double t) noexcept;

 private:
  WindowShape shape_;
  bool strict_;
};

/// Physical-units Fourier transform F(f)(xi_j) = spacing * sum f(x_m) e^{-2 pi i xi_j x_m}.
std::vector<cplx> physical_spectrum(const Signal& f);

/// <f, phi> for phi(x) = |I|^{-1} phi0((x - center)/|I|) e^{2 pi i lambda x}, |I| = 2^-k,
/// phi0-hat = profile. Frequency-side sum; center need not be a grid point.
cplx window_coeff_at(std::span<const cplx> spectrum, const DyadicGrid& grid,
                     const std::function<double(double)>& profile, int k, double lambda, double center);

/// <f, phi_{I,n}> with |I| = 2^-I.k. Throws unless I.k is admissible for the system.
cplx window_coeff(const Signal& f, const DyadicInterval& I, const FrequencySystem& system,
                  std::size_t n, const WindowSystem& windows);

/// Coefficients of every dyadic I of length 2^-k on the torus: e^{-2 pi i lambda c(I)} T f(c(I))
/// with T the multiplier profile((xi - lambda) 2^-k). One FFT; centers must be grid points.
std::vector<cplx> scale_coefficients(const Signal& f, const std::function<double(double)>& profile,
                                     int k, double lambda);

/// The maps I -> <f, phi_{I,n}> for every admissible k and every n.
class LocalCoefficients {
 public:
  LocalCoefficients(const Signal& f, const FrequencySystem& system, const WindowSystem& windows);

  const FrequencySystem& system() const noexcept { return system_; }
  /// Number of dyadic intervals of length 2^-k on the torus.
  std::size_t count(int k) const;
  std::span<const cplx> row(int k, std::size_t n) const;
  /// Index taken modulo count(k).
  cplx at(int k, std::size_t n, std::int64_t index) const;
  cplx at(const DyadicInterval& I, std::size_t n) const { return at(I.k, n, I.index); }

 private:
  FrequencySystem system_;
  std::vector<std::vector<cplx>> rows_;  // [scale_index * N + n]
};

/// CSV dump: k,n,I_index,re,im.
void write_coefficients_csv(std::ostream& out, const LocalCoefficients& coeffs);

/// Windowed Fourier expansion of T_{m} f for a multiplier m(xi) = profile((xi - c)/|omega|)
/// supported on omega: sum over translates c_i of e^{2 pi i c x} a_i h Psi(x - c_i),
/// with a_i window coefficients and Psi the cutoff at frequency scale |omega|.
/// The translates have step h = 2^-oversample_log2 / |omega|. With oversample_log2 = 0
/// (critical sampling) the ramp of psi-hat aliases and the identity is only approximate.
Signal windowed_expand(const Signal& f, const FrequencyInterval& omega,
                       const std::function<double(double)>& profile, int oversample_log2 = 1);

/// Same, for the bump m_omega of the family at (k, n).
Signal windowed_expand(const Signal& f, const MultiplierFamily& family, int k, std::size_t n,
                       int oversample_log2 = 1);

}  // namespace maxmult
