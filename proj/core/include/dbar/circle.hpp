#pragma once

/// \file circle.hpp
/// Fourier-side machinery for equispaced circle samples: Hardy projections,
/// Cauchy integrals off and on the circle, generic Fourier multipliers, and
/// the spectral arclength derivative.
///
/// Conventions for m even: FFT bin b carries frequency n = b for
/// b < m/2 and n = b - m otherwise (Nyquist counted negative).  The
/// analytic projection P+ keeps n >= 0; P- keeps n < 0; P+ + P- = I.

#include <functional>
#include <vector>

#include "dbar/quadrature.hpp"
#include "dbar/types.hpp"

namespace dbar {

enum class CircleSide {
  inside,    ///< evaluation point strictly inside the circle
  outside,   ///< evaluation point strictly outside the circle
  on_minus,  ///< on the circle, limit taken from inside: P+ = phi/2 + PV
};

/// Frequency of FFT bin b for an m-point rule (Nyquist negative).
inline int bin_freq(int b, int m) { return (b < m / 2) ? b : b - m; }

/// Fourier coefficients c_n with g(theta_j) = sum_n c_n e^{i n theta_j},
/// returned in FFT bin order.
std::vector<Complex> fourier_coeffs(const std::vector<Complex>& samples);

/// Inverse of fourier_coeffs.
std::vector<Complex> fourier_synthesis(const std::vector<Complex>& coeffs);

/// Apply a Fourier multiplier: bin with frequency n is scaled by mult(n).
std::vector<Complex> fourier_multiplier(
    const std::vector<Complex>& samples,
    const std::function<Complex(int)>& mult);

/// Analytic (non-negative frequency) projection P+ of circle samples.
std::vector<Complex> hardy_plus(const std::vector<Complex>& samples);
/// Co-analytic (negative frequency) projection P-.
std::vector<Complex> hardy_minus(const std::vector<Complex>& samples);

/// Cauchy integral (1/(2 pi i)) \oint_C phi(s) / (s - k) ds of sampled
/// boundary data, evaluated spectrally:
///  - inside:  sum_{n>=0} c_n ((k - c)/r)^n
///  - outside: -sum_{n<0} c_n (r/(k - c))^{|n|}
///  - on_minus: k must coincide with a quadrature node; returns the
///    interior boundary value (P+ phi)(k) = phi(k)/2 + PV-integral.
Complex circle_cauchy(const CircleQuadrature& circle,
                      const std::vector<Complex>& phi, Complex k,
                      CircleSide side);

/// Interior trace of the Cauchy integral at every node: P+ phi.
std::vector<Complex> circle_cauchy_interior_trace(
    const std::vector<Complex>& phi);
/// Exterior trace at every node: -P- phi.
std::vector<Complex> circle_cauchy_exterior_trace(
    const std::vector<Complex>& phi);

/// Spectral arclength derivative on the circle: (1/r) d/dtheta (the
/// Nyquist mode is zeroed).
std::vector<Complex> arclength_derivative(const CircleQuadrature& circle,
                                          const std::vector<Complex>& f);

}  // namespace dbar
