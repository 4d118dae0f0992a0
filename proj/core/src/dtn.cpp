#include "dbar/dtn.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <memory>
#include <stdexcept>

#include "dbar/circle.hpp"

namespace dbar {
namespace {

// Factorized polar finite-volume operator together with everything needed
// to rebuild right-hand sides for new Dirichlet data.
struct PolarSystem {
  int nr = 0, mt = 0;
  double hr = 0.0, ht = 0.0;
  std::vector<Complex> gamma_bd;   // gamma(1, theta_j)
  // unique_ptr: the factorization object is neither movable nor copyable
  std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<Complex>>> lu;

  std::size_t idx(int i, int j) const { return std::size_t(j) * nr + i; }

  // Balance equations sum the outward face fluxes of each cell; the
  // Dirichlet value enters only the last ring through the one-sided
  // quadratic derivative (8 g - 9 u_{nr-1} + u_{nr-2}) / (3 h_r) at r = 1.
  Eigen::VectorXcd rhs(const std::vector<Complex>& boundary) const {
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(std::size_t(nr) * mt);
    for (int j = 0; j < mt; ++j)
      b[idx(nr - 1, j)] = -gamma_bd[j] * (8.0 / (3.0 * hr)) * ht * boundary[j];
    return b;
  }

  std::vector<Complex> flux_of(const Eigen::VectorXcd& u,
                               const std::vector<Complex>& boundary) const {
    std::vector<Complex> f(mt);
    for (int j = 0; j < mt; ++j)
      f[j] = gamma_bd[j] *
             (8.0 * boundary[j] - 9.0 * u[idx(nr - 1, j)] + u[idx(nr - 2, j)]) /
             (3.0 * hr);
    return f;
  }
};

PolarSystem factor_polar_system(const Conductivity& c, int nr, int mt) {
  if (nr < 4) throw std::invalid_argument("solve_conductivity_pde: nr < 4");
  if (mt < 4 || mt % 2 != 0)
    throw std::invalid_argument(
        "solve_conductivity_pde: boundary sample count must be even and >= 4");

  PolarSystem sys;
  sys.nr = nr;
  sys.mt = mt;
  sys.hr = 1.0 / nr;
  sys.ht = 2.0 * kPi / mt;
  sys.gamma_bd.resize(mt);

  const double hr = sys.hr, ht = sys.ht;
  auto gam = [&](double r, double t) {
    return gamma_at(c, std::polar(r, t));
  };
  for (int j = 0; j < mt; ++j) sys.gamma_bd[j] = gam(1.0, j * ht);

  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(std::size_t(nr) * mt * 5);
  auto add = [&](std::size_t row, std::size_t col, Complex v) {
    trip.emplace_back(int(row), int(col), v);
  };

  for (int j = 0; j < mt; ++j) {
    const double tj = j * ht;
    const int jp = (j + 1) % mt, jm = (j + mt - 1) % mt;
    for (int i = 0; i < nr; ++i) {
      const double ri = (i + 0.5) * hr;
      const std::size_t p = sys.idx(i, j);

      if (i + 1 < nr) {  // outer face at r = (i+1) h_r
        const Complex cE = (i + 1) * hr * gam((i + 1) * hr, tj) / hr * ht;
        add(p, sys.idx(i + 1, j), cE);
        add(p, p, -cE);
      } else {  // boundary face at r = 1: quadratic one-sided derivative
        const Complex cb = sys.gamma_bd[j] * ht / (3.0 * hr);
        add(p, p, -9.0 * cb);
        add(p, sys.idx(nr - 2, j), cb);
        // Dirichlet term 8 cb g_j goes to the right-hand side.
      }
      if (i > 0) {  // inner face at r = i h_r (zero radius when i = 0)
        const Complex cW = i * hr * gam(i * hr, tj) / hr * ht;
        add(p, sys.idx(i - 1, j), cW);
        add(p, p, -cW);
      }
      const Complex cN = gam(ri, tj + 0.5 * ht) * hr / (ri * ht);
      add(p, sys.idx(i, jp), cN);
      add(p, p, -cN);
      const Complex cS = gam(ri, tj - 0.5 * ht) * hr / (ri * ht);
      add(p, sys.idx(i, jm), cS);
      add(p, p, -cS);
    }
  }

  Eigen::SparseMatrix<Complex> A(nr * mt, nr * mt);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  sys.lu = std::make_unique<Eigen::SparseLU<Eigen::SparseMatrix<Complex>>>();
  sys.lu->compute(A);
  if (sys.lu->info() != Eigen::Success)
    throw std::runtime_error("solve_conductivity_pde: factorization failed");
  return sys;
}

}  // namespace

DirichletSolution solve_conductivity_pde(const Conductivity& c,
                                         const std::vector<Complex>& boundary,
                                         int nr) {
  const int mt = int(boundary.size());
  PolarSystem sys = factor_polar_system(c, nr, mt);
  const Eigen::VectorXcd u = sys.lu->solve(sys.rhs(boundary));

  DirichletSolution out;
  out.nr = nr;
  out.m_theta = mt;
  out.u.assign(u.data(), u.data() + u.size());
  out.flux = sys.flux_of(u, boundary);
  return out;
}

DtNMap assemble_dtn(const Conductivity& c, int N, int nr, int m_theta) {
  if (m_theta <= 2 * N + 1)
    throw std::invalid_argument("assemble_dtn: m_theta must exceed 2N+1");
  PolarSystem sys = factor_polar_system(c, nr, m_theta);

  DtNMap map;
  map.N = N;
  map.M.resize(2 * N + 1, 2 * N + 1);
  std::vector<Complex> g(m_theta);
  for (int n = -N; n <= N; ++n) {
    for (int j = 0; j < m_theta; ++j)
      g[j] = std::polar(1.0, n * sys.ht * j);
    const Eigen::VectorXcd u = sys.lu->solve(sys.rhs(g));
    const std::vector<Complex> coeffs = fourier_coeffs(sys.flux_of(u, g));
    for (int m = -N; m <= N; ++m)
      map.M(m + N, n + N) = coeffs[(m + m_theta) % m_theta];
  }
  return map;
}

DtNMap dtn_identity(int N) {
  DtNMap map;
  map.N = N;
  map.M = Eigen::MatrixXcd::Zero(2 * N + 1, 2 * N + 1);
  for (int n = -N; n <= N; ++n) map.M(n + N, n + N) = double(std::abs(n));
  return map;
}

DtNMap dtn_conjugate(const DtNMap& map) {
  DtNMap out;
  out.N = map.N;
  out.M.resize(map.dim(), map.dim());
  for (int m = -map.N; m <= map.N; ++m)
    for (int n = -map.N; n <= map.N; ++n)
      out.M(m + map.N, n + map.N) = std::conj(map.entry(-m, -n));
  return out;
}

}  // namespace dbar
