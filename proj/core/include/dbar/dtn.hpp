#pragma once

/// \file dtn.hpp
/// Dirichlet problem for div(gamma grad u) = 0 on the unit disc and the
/// resulting Dirichlet-to-Neumann matrices in the e^{i n theta} basis.
///
/// Discretization: conservative finite volumes on the polar grid
///   r_i = (i + 1/2) h_r  (h_r = 1/nr, cell faces at i h_r),
///   theta_j = 2 pi j / m_theta,
/// with gamma sampled at cell faces.  The inner face of the first ring has
/// zero radius, so the origin needs no special casing; the boundary face
/// uses a one-sided quadratic stencil through the Dirichlet value, which
/// keeps the scheme second order and doubles as the flux formula.
///
/// Discretization bias in the maps themselves is O(h^2) per mode; code
/// that consumes the *difference* to the reference map should subtract a
/// map assembled on the same grid (see assemble_dtn's reference overload),
/// which cancels the bias to O(h^2 * contrast).

#include <Eigen/Dense>
#include <vector>

#include "dbar/potential.hpp"

namespace dbar {

/// Solution samples of the conductivity equation on the polar grid,
/// with the co-normal boundary derivative gamma du/dr at r = 1.
struct DirichletSolution {
  int nr = 0;
  int m_theta = 0;
  std::vector<Complex> u;     ///< cell values, index j * nr + i
  std::vector<Complex> flux;  ///< gamma du/dr at theta_j, j = 0..m_theta-1

  const Complex& at(int i, int j) const { return u[std::size_t(j) * nr + i]; }
  double r(int i) const { return (i + 0.5) / nr; }
  double theta(int j) const { return 2.0 * kPi * j / m_theta; }
};

/// Solve div(gamma grad u) = 0 on the unit disc with Dirichlet data
/// sampled at the m_theta boundary angles (boundary.size() fixes m_theta,
/// which must be even; nr >= 4).
DirichletSolution solve_conductivity_pde(const Conductivity& c,
                                         const std::vector<Complex>& boundary,
                                         int nr);

/// Dirichlet-to-Neumann matrix in the e^{i n theta} basis, |n| <= N:
/// column n_in + N holds the flux expansion of the driver e^{i n_in theta}.
struct DtNMap {
  int N = 0;
  Eigen::MatrixXcd M;  ///< (2N+1) x (2N+1), M(n_out + N, n_in + N)

  Complex entry(int n_out, int n_in) const { return M(n_out + N, n_in + N); }
  int dim() const { return 2 * N + 1; }
};

/// Assemble the map by driving each basis vector through one factorized
/// solve.  Requires m_theta > 2 N + 1.
DtNMap assemble_dtn(const Conductivity& c, int N, int nr, int m_theta);

/// Exact continuum map of the unit conductivity: diag(|n|).
DtNMap dtn_identity(int N);

/// Map of the conjugate conductivity, obtained without a new solve:
/// conjugating the equation gives  M'(m, n) = conj(M(-m, -n)).
DtNMap dtn_conjugate(const DtNMap& map);

}  // namespace dbar
