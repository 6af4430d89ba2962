#pragma once

#include <complex>

namespace nlslab::fft {

// In-place unnormalised DFTs backed by FFTW.  sign = -1 is exp(-2 pi i jk/n).
void dft1(std::complex<double>* data, int n, int sign);
// Row-major rows x cols array; transforms both axes.
void dft2(std::complex<double>* data, int rows, int cols, int sign);
// Transforms each of `count` contiguous rows of length n.
void dft_rows(std::complex<double>* data, int n, int count, int sign);

} // namespace nlslab::fft
