#pragma once

/// \file lippmann.hpp
/// Lippmann-Schwinger solves for the first-order (Dirac-type) system.
///
/// The complex-geometric-optics matrix mu(z, k) satisfies, column pair by
/// column pair,
///   mu11 = 1 + L_k[Q12 conj(mu21)],   mu21 = L_k[Q21 conj(mu11)],
///   mu12 = L_k[Q12 conj(mu22)],       mu22 = 1 + L_k[Q21 conj(mu12)],
/// where L_k[f] = (1/pi) \iint f(w) e^{-i Re(conj(k) w)} / (z - w) dS(w).
/// The conjugations make the fixed-point operator only R-linear, so the
/// systems are solved by real-stacked GMRES restricted to the potential
/// support; full-grid and off-grid values follow by one kernel application.
///
/// The anchored kind solves the same system with the kernel phase frozen
/// at a reference point k0 inside the data disc and the incident phase
/// e^{i (conj(k) - conj(k0)) z / 2} carried on the right-hand side; it
/// extends the spectral family to k where the standard solve may fail
/// (and analytically in k on any disc where k0 works).

#include <string>

#include "dbar/gmres.hpp"
#include "dbar/potential.hpp"
#include "dbar/types.hpp"

namespace dbar {

struct DiracOptions {
  double tol = 1e-10;
  int max_iters = 600;
  int restart = 60;
};

/// One spectral-parameter solve.  Grids hold the final matrix mu (for the
/// anchored kind, already converted from the auxiliary anchored unknown),
/// and s* hold the Lippmann-Schwinger source planes (zero off the
/// support), which double as the scattering-data integrands.
struct ScatteringSolution {
  enum class Kind { standard, anchored };

  Complex k;
  Kind kind = Kind::standard;
  Complex k0{0.0, 0.0};  ///< anchor (anchored kind only)

  ScalarGrid mu11, mu12, mu21, mu22;
  // Source planes of the solved system:
  //   s1a = phase * Q12 * conj(u21),  s1b = phase * Q21 * conj(u11),
  //   s2a = phase * Q12 * conj(u22),  s2b = phase * Q21 * conj(u12),
  // where u is the system unknown (mu for standard, the anchored
  // auxiliary for anchored) and phase = e^{-i Re(conj(kp) z)} with
  // kp = k (standard) or k0 (anchored).
  ScalarGrid s1a, s1b, s2a, s2b;

  double residual = 0.0;   ///< worst relative GMRES residual
  int iterations = 0;      ///< summed GMRES iterations
  double condition = 0.0;  ///< sigma_min of the restricted system if scanned

  /// mu at an arbitrary point by direct summation over the source nodes.
  Mat2 eval_mu(Complex z) const;
  /// psi = mu * e^{i conj(k) z / 2}.
  Mat2 eval_psi(Complex z) const;
};

/// Standard solve at spectral parameter k.
ScatteringSolution solve_mu(const PotentialField& Q, Complex k,
                            const DiracOptions& opt = {});

/// Anchored solve at k with anchor k0 (|k0| inside the data disc).
ScatteringSolution solve_mu_plus(const PotentialField& Q, Complex k,
                                 Complex k0, const DiracOptions& opt = {});

/// Four planes of a 2x2 matrix field on the z-grid.
struct Mat2Field {
  ScalarGrid a11, a12, a21, a22;
  Mat2 at(int i, int j) const {
    return {a11.at(i, j), a12.at(i, j), a21.at(i, j), a22.at(i, j)};
  }
};

/// The symmetrized spectral field
///   v = [ conj(mu11),              mu12 e^{i Re(conj(k) z)} ]
///       [ mu21 e^{i Re(conj(k) z)}, conj(mu22)             ]
/// (same pattern for the anchored family).
Mat2Field build_v(const ScatteringSolution& sol);

/// v at an arbitrary point.
Mat2 eval_v(const ScatteringSolution& sol, Complex z);

}  // namespace dbar
