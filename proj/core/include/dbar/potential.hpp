#pragma once

/// \file potential.hpp
/// Conductivities on the unit disc and the off-diagonal first-order
/// potentials derived from them.
///
/// A conductivity gamma is complex-valued, once differentiable, equal to 1
/// outside the unit disc, with Re gamma > 0 everywhere.  Its potential has
/// entries  Q12 = -(1/2) d(log gamma)/dz  and
/// Q21 = conj(-(1/2) d(log gamma)/dzbar), supported where gamma != 1.

#include <functional>
#include <optional>
#include <string>

#include "dbar/types.hpp"

namespace dbar {

struct Conductivity {
  ScalarGrid gamma;
  double contrast = 0.0;       ///< max |gamma - 1|
  double support_radius = 0.0; ///< gamma == 1 for |z| > this radius
  std::string smoothness;      ///< free-form tag, e.g. "smooth", "c1"
  /// Optional exact pointwise evaluator (phantom presets provide one).
  /// When absent, off-grid evaluation interpolates the sampled grid.
  std::function<Complex(Complex)> analytic;
};

/// Pointwise value of gamma: the analytic evaluator when present,
/// otherwise bicubic interpolation of the grid samples.  Exactly 1 for
/// |z| >= 1 (conductivities are 1 outside the unit disc by definition).
Complex gamma_at(const Conductivity& c, Complex z);

/// Entrywise complex conjugate (grid, evaluator, and metadata).
Conductivity conjugate(const Conductivity& c);

/// Throws std::invalid_argument if gamma fails a structural requirement:
/// Re gamma <= 0 somewhere, or gamma != 1 (beyond tol) outside the unit
/// disc.
void validate_conductivity(const Conductivity& c, double tol = 1e-12);

struct PotentialField {
  ScalarGrid Q12;
  ScalarGrid Q21;
  double support_radius = 0.0;
  std::optional<Conductivity> source_gamma;

  /// Largest entry magnitude over both components.
  double max_abs() const;
  /// Entrywise-scaled copy (homotopy parameter).
  PotentialField scaled(double a) const;
};

/// Build the potential from a conductivity via spectral differentiation of
/// log gamma; values outside the support radius are clipped to exactly
/// zero (the clipped mass is spectral ringing, reported by the return
/// value's diagnostics in tests).
PotentialField gamma_to_Q(const Conductivity& c);

}  // namespace dbar
