#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace dilative {

/// In-place radix-2 FFT; size must be a power of two.
/// The inverse transform includes the 1/n normalization.
void fft_radix2(std::vector<std::complex<double>>& data, bool inverse);

std::size_t next_pow2(std::size_t n);

/// Full linear convolution of two real sequences (length nx+ny-1),
/// computed by zero-padded FFT.
std::vector<double> convolve_real(const std::vector<double>& x,
                                  const std::vector<double>& y);

} // namespace dilative
