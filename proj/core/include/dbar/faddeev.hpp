#pragma once

/// \file faddeev.hpp
/// The exponentially conjugated fundamental solution of the Laplacian at
/// spectral parameter k (Faddeev kernel), its single layer on the unit
/// circle, and the boundary traces of the scattering solutions of the
/// conductivity equation recovered from Dirichlet-to-Neumann data.

#include <Eigen/Dense>
#include <vector>

#include "dbar/dtn.hpp"
#include "dbar/quadrature.hpp"
#include "dbar/scattering.hpp"

namespace dbar {

/// G_k(z) = (1/2 pi) Re E1(-i k z): the fundamental solution of
/// Delta + 4 i k d/dzbar singled out by decay of e^{-ikz} G_k(z).
/// Real-valued; logarithmic at the origin,
///   G_k(z) = -(1/2 pi) (ln|z| + ln|k| + gamma_E) + O(|z|).
/// Requires k z != 0.
double faddeev_green(Complex k, Complex z);

/// Smooth remainder of the log split G_k(z) = -(1/2 pi) ln|z| + R_k(z).
/// R_k is real-analytic (entire exponential-integral remainder) with
/// R_k(0) = -(gamma_E + ln|k|) / (2 pi); finite at z = 0.
double faddeev_green_smooth(Complex k, Complex z);

/// Grid samples of G_k; a node exactly at the origin is set to 0.
ScalarGrid faddeev_green_grid(Complex k, double half_width, int n);

/// Single layer  (S_k sigma)(z) = \oint_{|z'|=1} G_k(z - z') sigma(z') dl(z')
/// on the unit circle, returned at the quadrature nodes.  The log part acts
/// as the exact Fourier multiplier 1/(2|n|) (0 at n = 0) on the trigonometric
/// interpolant; the real-analytic remainder uses the trapezoid rule, so the
/// scheme is spectrally accurate.  The circle must be the unit circle.
std::vector<Complex> single_layer(Complex k, const CircleQuadrature& circle,
                                  const std::vector<Complex>& sigma);

/// Dense node-space matrix of the same operator.
Eigen::MatrixXcd single_layer_matrix(Complex k, const CircleQuadrature& circle);

/// Boundary traces of the two exponentially growing solutions of
/// div(gamma grad U) = 0 at spectral parameter k, from DtN data alone:
///   (I + S_{conj(k)/2} (L_gamma - L_1)) U1 = (2/(i conj(k))) e^{i z conj(k)/2},
/// and U2 likewise with the conjugate conductivity's map, conjugated.
/// `condition` estimates the spectral condition number of the boundary
/// systems (it spikes on the exceptional set of the conductivity).
struct FaddeevTraces {
  Complex k;
  std::vector<Complex> U1, U2;  ///< values at the circle nodes
  double condition = 0.0;
};

/// dtn_gamma and dtn_reference must come from assemble_dtn on the same
/// polar grid (same N as well); their difference cancels the shared
/// discretization bias of the maps.
FaddeevTraces faddeev_traces(const DtNMap& dtn_gamma,
                             const DtNMap& dtn_reference, Complex k,
                             const CircleQuadrature& circle);

/// First-order scattering trace on the unit circle assembled from U1, U2:
/// with kappa the outward unit normal (= z on the unit circle) and d/ds the
/// counterclockwise arclength derivative,
///   psi11 = (1/2) conj(kappa) (L_gamma U1 - i dU1/ds),   psi12 likewise
///   from U2, and psi21, psi22 are the conjugates of the (+i) combinations.
/// The DtN action embeds the discrete difference into the exact |n|
/// multiplier tail.
BoundaryTrace psi_boundary(const FaddeevTraces& traces,
                           const DtNMap& dtn_gamma,
                           const DtNMap& dtn_reference,
                           const CircleQuadrature& circle);

}  // namespace dbar
