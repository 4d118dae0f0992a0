#pragma once

/// \file quadrature.hpp
/// Quadrature rules: equispaced circle rules (trapezoid in arclength, which
/// is spectrally accurate for smooth periodic integrands) and panelwise
/// Gauss-Legendre rules for radial integrals.

#include <vector>

#include "dbar/types.hpp"

namespace dbar {

/// Equispaced counterclockwise quadrature on a circle.  Node j sits at
/// angle theta_j = 2 pi j / m.  m must be even (Nyquist-symmetric Fourier
/// multipliers rely on it).
struct CircleQuadrature {
  Complex center{0.0, 0.0};
  double radius = 1.0;
  int m = 0;

  CircleQuadrature() = default;
  CircleQuadrature(Complex c, double r, int m_);

  double theta(int j) const { return 2.0 * kPi * j / m; }
  Complex unit(int j) const;            ///< e^{i theta_j}
  Complex node(int j) const;            ///< center + radius e^{i theta_j}
  double dtheta() const { return 2.0 * kPi / m; }
  /// Weight for contour integrals \oint f(z) dz: i radius e^{i theta} dtheta.
  Complex dz_weight(int j) const;

  /// Trapezoid contour integral \oint f dz of sampled values.
  Complex integrate_dz(const std::vector<Complex>& f) const;
  /// Trapezoid angular integral \int f dtheta of sampled values.
  Complex integrate_dtheta(const std::vector<Complex>& f) const;
};

/// One-dimensional quadrature rule: nodes and weights for \int f(x) dx.
struct Rule1D {
  std::vector<double> x, w;
  std::size_t size() const { return x.size(); }
};

/// Gauss-Legendre rule with `npts` points on [a, b].
Rule1D gauss_legendre(double a, double b, int npts);

/// Composite rule on [a, b]: `npanels` geometrically graded panels
/// (ratio (b/a)^{1/npanels}; requires 0 < a < b) with an `npts`-point
/// Gauss-Legendre rule on each.
Rule1D geometric_panels(double a, double b, int npanels, int npts);

}  // namespace dbar
