#pragma once

/// \file cauchy.hpp
/// Solid Cauchy transform over the plane and the oscillatory Green
/// convolution built on it.
///
/// The discrete model replaces C[f](z) = (1/pi) \iint f(w) / (z - w) dS(w)
/// by the node sum  sum_j K(z - z_j) f_j h^2  with K(zeta) = 1/(pi zeta)
/// and K(0) = 0.  The zero value at the origin cell IS the exact integral
/// of the kernel over the node-centered square cell (odd symmetry), and
/// the property zeta * K(zeta) = 1/pi on every other cell is load-bearing:
/// several identities of the discrete scattering model hold exactly
/// because of it, so no smoothing or cell-averaging correction is applied.
///
/// On-grid transforms run as exact circular convolutions on a zero-padded
/// (2n)^2 grid, so every difference z_i - z_j is represented without
/// wrap-around.

#include <vector>

#include "dbar/types.hpp"

namespace dbar {

/// Discrete solid Cauchy transform: out(z_i) = sum_j K(z_i - z_j) f_j h^2.
/// Acts as the exact right inverse of the discrete d/dzbar in the sense of
/// the punctured-kernel model; for smooth compactly supported f it
/// converges to (1/pi) \iint f(w)/(z - w) dS(w), i.e. to the inverse of
/// d/dzbar.
ScalarGrid cauchy_solid(const ScalarGrid& f);

/// Same transform evaluated at one arbitrary point (direct summation over
/// the nodes where f is nonzero; exact match of cauchy_solid on nodes).
Complex cauchy_solid_point(const ScalarGrid& f, Complex z);

/// Inverse of d/dz: conj o cauchy_solid o conj.
ScalarGrid d_inverse(const ScalarGrid& f);

/// Oscillatory Green convolution  out(z) = \iint G(z - w, k) f(w) dS(w)
/// with G(z, k) = (1/pi) e^{i conj(k) z / 2} / z, evaluated as
/// e^{i conj(k) z / 2} * C[e^{-i conj(k) . / 2} f](z) so the phase is
/// handled analytically and the kernel convolution stays k-independent.
ScalarGrid green_convolve(const ScalarGrid& f, Complex k);

/// Lippmann-Schwinger convolution  L_k[f](z) =
/// (1/pi) \iint f(w) e^{-i Re(conj(k) w)} / (z - w) dS(w)
/// = C[e^{-i Re(conj(k) .)} f](z).
ScalarGrid lk_convolve(const ScalarGrid& f, Complex k);

/// L_k[f] at one arbitrary point by direct summation over nonzero nodes.
Complex lk_convolve_point(const ScalarGrid& f, Complex k, Complex z);

}  // namespace dbar
