#pragma once

#include <complex>
#include <span>

namespace maxmult::detail {

// In-place radix-2 FFT, unnormalized. Forward uses exp(-2 pi i jm/M).
// data.size() must be a power of two.
void fft_inplace(std::span<std::complex<double>> data, bool inverse);

}  // namespace maxmult::detail
