#include "dbar/gmres.hpp"

#include <cmath>

namespace dbar {

GmresResult gmres(const LinearOp& apply_a, const Eigen::VectorXd& b,
                  Eigen::VectorXd& x, const GmresOptions& opt) {
  GmresResult res;
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    x.setZero(b.size());
    res.converged = true;
    return res;
  }
  if (x.size() != b.size()) x = Eigen::VectorXd::Zero(b.size());

  const int m = opt.restart;
  Eigen::MatrixXd V(b.size(), m + 1);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
  Eigen::VectorXd cs(m), sn(m), g(m + 1), w(b.size());

  int total = 0;
  double relres = 0.0;
  while (total < opt.max_iters) {
    // Residual of current iterate.
    apply_a(x, w);
    Eigen::VectorXd r = b - w;
    double beta = r.norm();
    relres = beta / bnorm;
    if (relres < opt.tol) {
      res.converged = true;
      break;
    }
    V.col(0) = r / beta;
    g.setZero();
    g(0) = beta;

    int j = 0;
    for (; j < m && total < opt.max_iters; ++j, ++total) {
      // Arnoldi with modified Gram-Schmidt.
      apply_a(V.col(j), w);
      for (int i = 0; i <= j; ++i) {
        H(i, j) = w.dot(V.col(i));
        w -= H(i, j) * V.col(i);
      }
      H(j + 1, j) = w.norm();
      if (H(j + 1, j) > 0.0) V.col(j + 1) = w / H(j + 1, j);

      // Apply accumulated Givens rotations to the new column.
      for (int i = 0; i < j; ++i) {
        const double t = cs(i) * H(i, j) + sn(i) * H(i + 1, j);
        H(i + 1, j) = -sn(i) * H(i, j) + cs(i) * H(i + 1, j);
        H(i, j) = t;
      }
      // New rotation annihilating H(j+1, j).
      const double denom = std::hypot(H(j, j), H(j + 1, j));
      if (denom == 0.0) {
        cs(j) = 1.0;
        sn(j) = 0.0;
      } else {
        cs(j) = H(j, j) / denom;
        sn(j) = H(j + 1, j) / denom;
      }
      H(j, j) = denom;
      H(j + 1, j) = 0.0;
      g(j + 1) = -sn(j) * g(j);
      g(j) = cs(j) * g(j);

      relres = std::abs(g(j + 1)) / bnorm;
      if (relres < opt.tol) {
        ++j;
        break;
      }
    }

    // Back-substitution for the least-squares coefficients.
    Eigen::VectorXd y(j);
    for (int i = j - 1; i >= 0; --i) {
      double s = g(i);
      for (int l = i + 1; l < j; ++l) s -= H(i, l) * y(l);
      y(i) = s / H(i, i);
    }
    x += V.leftCols(j) * y;
    if (relres < opt.tol) {
      res.converged = true;
      break;
    }
    if (j == 0) break;  // stagnation guard (degenerate operator)
  }

  res.iterations = total;
  res.residual = relres;
  return res;
}

}  // namespace dbar
