#pragma once

/// \file exceptional.hpp
/// Detection of exceptional spectral parameters: k where the restricted
/// Lippmann-Schwinger system (I - T_k) on the potential support becomes
/// singular.  The scan computes the smallest singular value of the exact
/// real-stacked matrix of the solver's own restricted system, so a dip
/// certifies (near-)singularity of precisely the operator the forward
/// solves invert.

#include <Eigen/Dense>

#include <vector>

#include "dbar/potential.hpp"
#include "dbar/types.hpp"

namespace dbar {

/// Dense real-stacked matrix of the support-restricted system at k
/// (unknown layout: node-major [Re, Im] for the first column entry, then
/// the second).  Exposed so tests can cross-check the iterative solver and
/// the singular-value probe against direct factorizations.
Eigen::MatrixXd dirac_system_matrix(const PotentialField& Q, Complex k);

/// Smallest singular value of the real-stacked restricted system at k
/// (column pair 1; pair 2 is a permutation with identical spectrum).
double dirac_sigma_min(const PotentialField& Q, Complex k);

struct ExceptionalScanOptions {
  double dip_rel_threshold = 1e-6;    ///< dip if sigma < this * median
  double certify_rel_margin = 1e-3;   ///< certified clear if sigma >= this * median
};

struct ExceptionalDip {
  double radius = 0.0;
  double angle = 0.0;
  double sigma = 0.0;
};

struct ExceptionalScan {
  std::vector<double> radii;
  std::vector<double> angles;
  std::vector<double> sigma;  ///< [ir * angles.size() + ia]
  double median_sigma = 0.0;
  std::vector<ExceptionalDip> dips;
  /// Smallest disc radius A with every dip inside |k| < A - 1 (or the
  /// conservative default 2 if the scan found none).
  double recommended_A = 0.0;
  ExceptionalScanOptions options;

  double at(std::size_t ir, std::size_t ia) const {
    return sigma[ir * angles.size() + ia];
  }
  /// True when no dip was flagged and every scanned node stays above the
  /// certification margin relative to the scan median (no near-singular
  /// parameters detected).
  bool certified_clear() const {
    if (!dips.empty()) return false;
    for (double s : sigma)
      if (s < options.certify_rel_margin * median_sigma) return false;
    return !sigma.empty();
  }
};

/// Scan sigma_min over the polar grid radii x angles for the scaled
/// potential a * Q.  Parallel over scan points, reduced in fixed order.
ExceptionalScan scan_exceptional(const PotentialField& Q,
                                 const std::vector<double>& radii,
                                 const std::vector<double>& angles,
                                 double a = 1.0,
                                 const ExceptionalScanOptions& opt = {});

}  // namespace dbar
