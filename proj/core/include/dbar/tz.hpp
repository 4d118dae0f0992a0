#pragma once

/// \file tz.hpp
/// The reconstruction-side singular integral operator and its solver.
///
/// For a fixed physical point z, the operator T_z maps a 2x2-matrix field
/// phi living on the spectral annulus (plus its interior trace on the
/// truncation circle |k| = A) to
///
///   (T_z phi)(k) = (1/pi) int_{A<|s|<R}  e^{i Re(conj(s) z)} conj(phi(s))
///                      H(s) dS(s) / (s - k)
///                + (1/(2 pi i)) oint_{|s|=A} N[phi](s) ds / (s - k),
///
/// where H(s) is the off-diagonal part of the data's diagonal restriction
/// and N[phi] couples the interior trace phi^- to the dense circle kernel
/// through a fixed logarithmic weight W.  The solved field w satisfies
/// (I + T_z) w = -T_z I; the boundary values psi of the associated
/// first-order system are then recovered from w by an explicit phase and
/// conjugation pattern.
///
/// The operator is R-linear but not C-linear (it conjugates its argument),
/// so the iterative solve runs on the real-stacked form.  Everything that
/// does not depend on z (dense Cauchy node matrices, the log-kernel
/// product-quadrature matrix) is assembled once per layout and shared
/// read-only across z-threads.

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "dbar/gmres.hpp"
#include "dbar/layout.hpp"
#include "dbar/scattering.hpp"
#include "dbar/types.hpp"

namespace dbar {

/// Pointwise logarithmic circle weight
///   W(k, s) = Log(A^2 - conj(k) s) - Log(A^2 - conj(k0) s),  |s| = A,
/// with principal logarithms.  Both arguments have nonnegative real part
/// whenever |k| <= A and |k0| < A, so the principal branch is the correct
/// (continuous) one and |Im W| < pi automatically; the domain restriction
/// |k| <= A is enforced.  Singular only at s = k (possible when |k| = A).
Complex w_value(const SpectralLayout& layout, Complex k, Complex s);

/// Dense samples of the circle weight on node pairs: entry (i, j) is
/// W(node_i, node_j) for i != j, and the diagonal holds the regular part
///   S0(node_i) = W(node_i, s) - Log(1 - e^{i(theta_s - theta_i)})
/// (constant in s), which is the limiting finite value after removing the
/// logarithmic singularity.  Throws if any entry violates |Im W| < pi.
Eigen::MatrixXcd build_w_kernel(const SpectralLayout& layout);

/// z-independent dense kernels shared by every T_z on one layout.
/// Immutable after assembly; share via shared_ptr across threads.
struct TzKernels {
  SpectralLayout layout;

  Eigen::MatrixXcd ext_cauchy;  ///< (j n_ext) -> (i n_ext): wq_j/(s_j - k_i), 0 on diag
  Eigen::VectorXcd ext_rowsum;  ///< row sums of ext_cauchy
  Eigen::VectorXcd ext_comp;    ///< exact annulus integral A^2/k_i - conj(k_i)
  Eigen::MatrixXcd bd_cauchy;   ///< (j n_ext) -> (i boundary): wq_j/(s_j - b_i)
  Eigen::VectorXcd bd_rowsum;   ///< row sums of bd_cauchy

  Eigen::MatrixXcd w_kernel;  ///< build_w_kernel(layout)
  /// Product-quadrature matrix for the log weight: applying it to samples
  /// g(node_j) approximates oint W(node_i, s) g(s) dtheta(s) with the
  /// logarithmic part integrated exactly against the trigonometric
  /// interpolant of g and the smooth part by the trapezoid rule.
  Eigen::MatrixXcd w_quad;
};

std::shared_ptr<const TzKernels> build_tz_kernels(const SpectralLayout& layout);

/// Matrix field on the spectral nodes: values at the exterior annulus
/// nodes and interior-limit trace values on the truncation circle.
struct TzField {
  std::vector<Mat2> ext;  ///< layout.ext_nodes indexing
  std::vector<Mat2> bd;   ///< layout.boundary node indexing

  static TzField zero(const SpectralLayout& layout);
  static TzField constant(const SpectralLayout& layout, const Mat2& value);
};

/// Root-sum-square of all entries (diagnostic norm).
double field_norm(const TzField& f);

/// T_z bound to one scattering data set and one physical point z.
/// Holds only references/shared kernels plus per-z phase caches, so it is
/// cheap to construct per z and safe to use from one thread while other
/// threads use their own instances on the same data and kernels.
struct TzOperator {
  const ScatteringData* data = nullptr;
  std::shared_ptr<const TzKernels> kernels;
  Complex z;

  std::vector<Complex> ext_phase;  ///< e^{i Re(conj(k_t) z)} at exterior nodes
  std::vector<Mat2> ext_h;         ///< off-diagonal data matrix at exterior nodes
  std::vector<Complex> bd_phase;   ///< e^{i Re(conj(b_i) z)} at circle nodes
  std::vector<Mat2> bd_h;          ///< off-diagonal part of data.bd(i,i)
  std::vector<Complex> in_fac1;    ///< e^{i conj(b_j) z / 2} d(conj s) Jacobian
  std::vector<Complex> in_fac2;    ///< e^{-i b_j conj(z) / 2} ds Jacobian
  std::vector<Complex> out_phase;  ///< e^{i b_i conj(z) / 2}
};

TzOperator make_tz(const ScatteringData& data,
                   std::shared_ptr<const TzKernels> kernels, Complex z);

/// Apply T_z at every exterior node and (as interior limits) at every
/// truncation-circle node.
TzField apply_tz(const TzOperator& op, const TzField& phi);

/// Evaluate (T_z phi)(k) at an arbitrary point with |k| > A.  The annulus
/// term uses the bare quadrature sum (no singularity subtraction, since
/// phi is only known at the nodes), so accuracy degrades within a few node
/// spacings of the annulus nodes; the circle term is evaluated by its
/// exterior modal expansion and is accurate everywhere.
Mat2 apply_tz_at(const TzOperator& op, const TzField& phi, Complex k);

/// Solved reconstruction field at one z.
struct DbarSolution {
  TzField w;             ///< solution of (I + T_z) w = -T_z I
  Complex z;
  double residual = 0.0;   ///< final relative GMRES residual
  int iterations = 0;
  bool solvable = true;    ///< false when the iteration did not converge
};

/// Solve (I + T_z) w = -T_z I matrix-free with restarted GMRES on the
/// real-stacked unknowns; opt.tol is relative to the right-hand side.
/// Non-convergence is reported through DbarSolution::solvable rather than
/// an exception so that sweeps can record and skip such z.
DbarSolution solve_w(const TzOperator& op, const GmresOptions& opt = {});

/// Per-solution evaluation cache: the annulus sources and the circle-term
/// Fourier coefficients of the solved field, enabling O(n) evaluation of
/// w, psi, or mu at arbitrary |k| > A.
struct TzEvaluator {
  const TzOperator* op = nullptr;
  const DbarSolution* sol = nullptr;
  Eigen::MatrixXcd sources;                          ///< n_ext x 4 annulus sources of w+I
  std::array<std::vector<Complex>, 4> circle_modes;  ///< Fourier coeffs of N[w+I]
};

TzEvaluator make_evaluator(const TzOperator& op, const DbarSolution& sol);

/// Evaluate the solved field at arbitrary |k| > A (exact at exterior
/// nodes, where the stored value is returned).  Off the node set this
/// solves the small linear consistency system that the singularity
/// subtraction couples to conj(w(k)); it therefore needs the data's
/// diagonal restriction at k: an exterior node, a recovery-ring node, or
/// any k beyond the recorded truncation radius (where it vanishes).
Mat2 eval_w(const TzEvaluator& ev, Complex k);

/// Boundary values of the first-order system recovered from the solved
/// field:  psi = e^{i conj(k) z/2} conj(diag(w+I)) + e^{-i k conj(z)/2} offdiag(w+I).
Mat2 recover_psi(const TzEvaluator& ev, Complex k);
Mat2 recover_psi(const TzOperator& op, const DbarSolution& sol, Complex k);

/// Phase-stripped variant mu = psi e^{-i conj(k) z / 2}; its dbar-z
/// derivative carries the same potential information as psi but stays
/// O(1) in magnitude, which is what the reconstruction grid wants.
Mat2 recover_mu(const TzEvaluator& ev, Complex k);

}  // namespace dbar
