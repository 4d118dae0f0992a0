#include "dbar/exceptional.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "dbar/grid.hpp"
#include "dbar/threadpool.hpp"

namespace dbar {

// Dense real-stacked matrix of the restricted pair-1 system
//   uA_i - sum_j K_ij ph_j Q12_j conj(uB_j) h^2 = .,
//   uB_i - sum_j K_ij ph_j Q21_j conj(uA_j) h^2 = .,
// with K the punctured Cauchy kernel.  Layout: [Re/Im uA | Re/Im uB].
Eigen::MatrixXd dirac_system_matrix(const PotentialField& Q, Complex k) {
  const auto& g = Q.Q12;
  const std::vector<std::uint32_t> supp =
      disc_indices(g, Q.support_radius);
  const std::size_t Ns = supp.size();
  const double h2 = g.spacing() * g.spacing();

  std::vector<Complex> zs(Ns), ph(Ns), q12(Ns), q21(Ns);
  for (std::size_t s = 0; s < Ns; ++s) {
    const std::uint32_t t = supp[s];
    zs[s] = g.z(int(t % g.n), int(t / g.n));
    const double arg = -std::real(std::conj(k) * zs[s]);
    ph[s] = Complex(std::cos(arg), std::sin(arg));
    q12[s] = Q.Q12.v[t];
    q21[s] = Q.Q21.v[t];
  }

  const std::size_t dim = 4 * Ns;
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(dim, dim);
  for (std::size_t i = 0; i < Ns; ++i) {
    for (std::size_t j = 0; j < Ns; ++j) {
      if (i == j) continue;  // punctured kernel
      const Complex ker = h2 / (kPi * (zs[i] - zs[j]));
      // Row block uA_i, column block uB_j: coefficient -c acting on
      // conj(uB_j) with c = ker ph_j q12_j:
      //   Re out -= Re c * x + Im c * y;  Im out -= Im c * x - Re c * y
      const Complex c12 = ker * ph[j] * q12[j];
      const std::size_t rA = 2 * i, cB = 2 * (Ns + j);
      A(rA, cB) -= c12.real();
      A(rA, cB + 1) -= c12.imag();
      A(rA + 1, cB) -= c12.imag();
      A(rA + 1, cB + 1) += c12.real();
      // Row block uB_i, column block uA_j with c = ker ph_j q21_j.
      const Complex c21 = ker * ph[j] * q21[j];
      const std::size_t rB = 2 * (Ns + i), cA = 2 * j;
      A(rB, cA) -= c21.real();
      A(rB, cA + 1) -= c21.imag();
      A(rB + 1, cA) -= c21.imag();
      A(rB + 1, cA + 1) += c21.real();
    }
  }
  return A;
}

namespace {

// sigma_min via LU-based inverse power iteration on (A A^T)^{-1}:
// x <- A^{-T} A^{-1} x grows like 1/sigma_min^2.  Deterministic start.
double sigma_min_of(const Eigen::MatrixXd& A) {
  const Eigen::Index n = A.rows();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i)
    x(i) = std::sin(0.7 * double(i) + 0.3) + 0.25;
  x.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 100; ++it) {
    const Eigen::VectorXd y = lu.solve(x);           // A^{-1} x
    Eigen::VectorXd w = lu.transpose().solve(y);     // A^{-T} y
    const double nrm = w.norm();
    if (!std::isfinite(nrm) || nrm == 0.0) return 0.0;     // singular
    const double next = nrm;
    w /= nrm;
    x = w;
    if (it > 4 && std::abs(next - lambda) < 1e-12 * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  // Rayleigh refinement: x approximates the left singular vector of the
  // smallest singular value, so |A^T x| is a quadratically accurate
  // estimate (and a weighted mean of nearby values when they cluster).
  return (A.transpose() * x).norm();
}

}  // namespace

double dirac_sigma_min(const PotentialField& Q, Complex k) {
  const Eigen::MatrixXd A = dirac_system_matrix(Q, k);
  if (A.rows() == 0) return 1.0;  // empty support: the system is I
  return sigma_min_of(A);
}

ExceptionalScan scan_exceptional(const PotentialField& Q,
                                 const std::vector<double>& radii,
                                 const std::vector<double>& angles,
                                 double a,
                                 const ExceptionalScanOptions& opt) {
  ExceptionalScan scan;
  scan.radii = radii;
  scan.angles = angles;
  scan.options = opt;
  scan.sigma.assign(radii.size() * angles.size(), 0.0);

  const PotentialField Qa = Q.scaled(a);
  parallel_for(scan.sigma.size(), [&](std::size_t t) {
    const std::size_t ir = t / angles.size();
    const std::size_t ia = t % angles.size();
    const Complex k =
        radii[ir] * Complex(std::cos(angles[ia]), std::sin(angles[ia]));
    scan.sigma[t] = dirac_sigma_min(Qa, k);
  });

  std::vector<double> sorted = scan.sigma;
  std::sort(sorted.begin(), sorted.end());
  scan.median_sigma = sorted.empty() ? 0.0 : sorted[sorted.size() / 2];

  double max_dip_radius = 0.0;
  for (std::size_t ir = 0; ir < radii.size(); ++ir)
    for (std::size_t ia = 0; ia < angles.size(); ++ia) {
      const double s = scan.at(ir, ia);
      if (s < opt.dip_rel_threshold * scan.median_sigma) {
        scan.dips.push_back({radii[ir], angles[ia], s});
        max_dip_radius = std::max(max_dip_radius, radii[ir]);
      }
    }
  scan.recommended_A = scan.dips.empty() ? 2.0 : max_dip_radius + 1.0;
  return scan;
}

}  // namespace dbar
