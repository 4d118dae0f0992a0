#pragma once

/// \file fft.hpp
/// Thin deterministic wrapper around FFTW3 complex transforms.  Plans are
/// created with FFTW_ESTIMATE (heuristic, machine-independent) and cached;
/// plan creation is serialized behind a mutex while execution is re-entrant,
/// so the free functions here are safe to call from worker threads.

#include <complex>
#include <vector>

#include "dbar/types.hpp"

namespace dbar {

/// In-place 2D FFT of an n x n row-major complex array.
/// sign = -1: forward (e^{-i...}), unnormalized.
/// sign = +1: inverse (e^{+i...}), scaled by 1/n^2.
void fft2(std::vector<Complex>& a, int n, int sign);

/// In-place 1D FFT of length n.  Same sign/normalization conventions.
void fft1(std::vector<Complex>& a, int sign);

/// Out-of-place convenience: returns the length-n DFT of `a` (sign = -1,
/// unnormalized).
std::vector<Complex> dft(const std::vector<Complex>& a);

/// Out-of-place inverse DFT (sign = +1, scaled by 1/n).
std::vector<Complex> idft(const std::vector<Complex>& a);

}  // namespace dbar
