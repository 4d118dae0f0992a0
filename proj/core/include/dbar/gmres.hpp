#pragma once

/// \file gmres.hpp
/// Restarted GMRES for real-linear operators.  Operators that involve
/// complex conjugation of the unknown are only R-linear, so systems are
/// posed over the reals on stacked [Re; Im] vectors and solved with a
/// matrix-free real GMRES.  Entirely serial and deterministic.

#include <Eigen/Dense>

#include <functional>

namespace dbar {

struct GmresOptions {
  int max_iters = 500;   ///< total Arnoldi steps across restarts
  int restart = 60;      ///< Krylov subspace dimension per cycle
  double tol = 1e-8;     ///< relative residual target ||r|| / ||b||
};

struct GmresResult {
  int iterations = 0;
  double residual = 0.0;  ///< final relative residual
  bool converged = false;
};

using LinearOp =
    std::function<void(const Eigen::VectorXd& in, Eigen::VectorXd& out)>;

/// Solve A x = b with matrix-free A; x holds the initial guess on entry
/// and the solution on exit.
GmresResult gmres(const LinearOp& apply_a, const Eigen::VectorXd& b,
                  Eigen::VectorXd& x, const GmresOptions& opt = {});

}  // namespace dbar
