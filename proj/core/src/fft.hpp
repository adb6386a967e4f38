#pragma once

#include <complex>
#include <vector>

namespace memchaos::detail {

// In-place mixed-radix complex FFT (any n >= 1). The inverse includes
// the 1/n scaling, so inverse(forward(x)) == x up to rounding.
void fft_forward(std::vector<std::complex<double>>& data);
void fft_inverse(std::vector<std::complex<double>>& data);

}  // namespace memchaos::detail
