#pragma once

/// \file grid.hpp
/// Grid-level utilities: norms, support enumeration, pointwise phase
/// factors, and spectral (FFT-symbol) complex derivatives on square grids.

#include <cstdint>
#include <vector>

#include "dbar/types.hpp"

namespace dbar {

/// L2 norm with cell measure: sqrt(sum |f|^2 h^2).
double l2_norm(const ScalarGrid& g);
/// Max node magnitude.
double max_norm(const ScalarGrid& g);
/// Relative L2 distance ||a - b|| / ||b|| (cell measure cancels).
double rel_l2(const ScalarGrid& a, const ScalarGrid& b);

/// Flat indices of all nodes with |z| <= radius, in row-major order.
std::vector<std::uint32_t> disc_indices(const ScalarGrid& g, double radius);

/// Multiply samples pointwise by e^{i Re(conj(k) z)} (phase = +1) or its
/// conjugate (phase = -1).
void apply_real_phase(ScalarGrid& g, Complex k, int phase);

/// Spectral derivative d/dzbar = (d/dx + i d/dy)/2 via FFT symbol.
/// Exact for band-limited samples; the input must be smoothly periodic on
/// the grid box (compactly supported well inside it in practice).
ScalarGrid dbar_spectral(const ScalarGrid& g);

/// Spectral derivative d/dz = (d/dx - i d/dy)/2 via FFT symbol.
ScalarGrid d_spectral(const ScalarGrid& g);

}  // namespace dbar
