#pragma once
// Thin FFT layer over FFTW.
//
// Plans are cached per (dim, n, direction), created once under a lock with
// FFTW_ESTIMATE | FFTW_UNALIGNED (deterministic planning, no buffer alignment
// requirements), and are safe to execute concurrently on distinct buffers.

#include <complex>

#include "levykit/grid.hpp"

namespace levykit {

// In-place unnormalized transform of grid.size() complex values.
// forward: sum_j x_j e^{-2 pi i jk/n}; inverse: the conjugate transform (no 1/N).
void fft_inplace(const FrequencyGrid& grid, std::complex<double>* data, bool forward);

}  // namespace levykit
