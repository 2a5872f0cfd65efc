#pragma once

#include <complex>
#include <vector>

namespace axim {

// In-place FFT of arbitrary length (radix-2 with Bluestein fallback).
// inverse=true applies the unscaled conjugate transform divided by n, so
// fft(ifft(x)) == x up to roundoff.
void fft_inplace(std::vector<std::complex<double>>& v, bool inverse);

}  // namespace axim
