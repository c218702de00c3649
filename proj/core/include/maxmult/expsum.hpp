#pragma once

#include <span>

#include "maxmult/multiplier.hpp"
#include "maxmult/variation.hpp"
#include "maxmult/windows.hpp"

namespace maxmult {

/// L^2 norm on [0, 1) of y -> sup_k |sum_n c_{k,n} e^{2 pi i lambda_n y}|, evaluated on
/// S = oversample * max(1, ceil(max |lambda|)) equispaced points. Requires separation 1
/// (any single frequency is accepted) and C.dim() == lambdas.size().
double max_exp_sum(const VarSequence& coeffs, std::span<const double> lambdas, int oversample = 8);

/// Vf(x) = (sum_n ||<f, phi_{I,n}>||^2_{V^r over admissible I containing x})^{1/2}. r > 2.
Signal variation_square_operator(const Signal& f, const FrequencySystem& system, const WindowSystem& windows,
                                 double r);

struct LocalReduction {
  double lhs = 0.0;        // ||sup_k |Delta_k f| ||_{L^p(J)}
  double expsum_lp = 0.0;  // shift-0 exponential sum, L^p(J)
  double expsum_l2 = 0.0;  // same, L^2(J)
  double v_local = 0.0;    // V_J f
  double rhs = 0.0;        // N^{1/2 - 1/r} ||w||_{V^{r,*}} V_J f
  double tail = 0.0;       // sum_{0 < |l| <= shift_cap} 2^{-100|l|} * shift-l exponential sum in L^p(J)
};

inline constexpr int kShiftCap = 8;

/// Both sides of the local L^p-by-L^2 reduction on a unit dyadic J. Separation must be 1.
LocalReduction local_reduce(const Signal& f, const MultiplierFamily& family, const WindowSystem& windows,
                            const DyadicInterval& J, double r, double p);

struct MartingaleReport {
  double f_norm = 0.0;          // ||f||_p
  double window_lhs = 0.0;      // || ||<f, phi_{I(k,x)}>||_{V^r_k} ||_p
  double window_rhs = 0.0;      // (1 + ||phi-hat(0)||_{V^r}) ||f||_p
  double window_ratio = 0.0;
  double lepingle_lhs = 0.0;    // || ||E_k f(x)||_{V^r_k} ||_p
  double lepingle_ratio = 0.0;  // lepingle_lhs / ||f||_p
  int scales = 0;
};

/// Window and pure dyadic-martingale variation against ||f||_p over every scale the grid resolves.
MartingaleReport martingale_variation_check(const Signal& f, const WindowSystem& windows, double r, double p);

}  // namespace maxmult
