#include "dbar/faddeev.hpp"

#include <stdexcept>

#include "dbar/circle.hpp"
#include "dbar/expint.hpp"

namespace dbar {
namespace {

constexpr double kEulerGamma = 0.5772156649015328606065120900824024;

void require_spectral_parameter(Complex k) {
  if (std::abs(k) < 1e-8)
    throw std::invalid_argument(
        "faddeev kernel: |k| too small (kernel degenerates at k = 0)");
}

void require_unit_circle(const CircleQuadrature& circle) {
  if (circle.center != Complex(0.0, 0.0) || circle.radius != 1.0)
    throw std::invalid_argument("single_layer: circle must be the unit circle");
}

// Entire part of the exponential integral:
//   Ein(u) = gamma_E + Ln u + E1(u) = sum_{j>=1} (-1)^{j+1} u^j / (j j!).
// The series is used at moderate |u| (no cancellation against the log);
// larger arguments go through E1 where the combination is well scaled.
double re_ein(Complex u) {
  if (std::abs(u) <= 8.0) {
    Complex sum(0.0, 0.0), term(1.0, 0.0);
    for (int j = 1; j <= 80; ++j) {
      term *= -u / double(j);
      const Complex add = -term / double(j);
      sum += add;
      if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum.real();
  }
  return expint_e1(u).real() + kEulerGamma + std::log(std::abs(u));
}

}  // namespace

double faddeev_green(Complex k, Complex z) {
  require_spectral_parameter(k);
  if (z == Complex(0.0, 0.0))
    throw std::invalid_argument("faddeev_green: z = 0");
  return -std::log(std::abs(z)) / (2.0 * kPi) + faddeev_green_smooth(k, z);
}

double faddeev_green_smooth(Complex k, Complex z) {
  require_spectral_parameter(k);
  const Complex u = Complex(0.0, -1.0) * k * z;
  return (re_ein(u) - kEulerGamma - std::log(std::abs(k))) / (2.0 * kPi);
}

ScalarGrid faddeev_green_grid(Complex k, double half_width, int n) {
  ScalarGrid out(half_width, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Complex z = out.z(i, j);
      out.at(i, j) =
          (z == Complex(0.0, 0.0)) ? 0.0 : faddeev_green(k, z);
    }
  return out;
}

Eigen::MatrixXcd single_layer_matrix(Complex k, const CircleQuadrature& circle) {
  require_spectral_parameter(k);
  require_unit_circle(circle);
  const int m = circle.m;

  // Circulant log part: row r(d) = (1/m) sum_n mult(n) e^{i n theta_d} with
  // mult(n) = 1/(2|n|), mult(0) = 0 (the exact spectrum of the log layer).
  std::vector<Complex> coeffs(m);
  for (int b = 0; b < m; ++b) {
    const int n = bin_freq(b, m);
    coeffs[b] = (n == 0) ? 0.0 : 1.0 / (2.0 * std::abs(double(n)) * m);
  }
  const std::vector<Complex> row = fourier_synthesis(coeffs);

  Eigen::MatrixXcd S(m, m);
  const double w = circle.dtheta();  // dl = dtheta on the unit circle
  for (int i = 0; i < m; ++i) {
    const Complex zi = circle.node(i);
    for (int j = 0; j < m; ++j) {
      const double smooth =
          (i == j) ? faddeev_green_smooth(k, Complex(0.0, 0.0))
                   : faddeev_green_smooth(k, zi - circle.node(j));
      S(i, j) = row[(i - j + m) % m] + smooth * w;
    }
  }
  return S;
}

std::vector<Complex> single_layer(Complex k, const CircleQuadrature& circle,
                                  const std::vector<Complex>& sigma) {
  require_unit_circle(circle);
  if (int(sigma.size()) != circle.m)
    throw std::invalid_argument("single_layer: density size mismatch");

  std::vector<Complex> out = fourier_multiplier(sigma, [](int n) {
    return (n == 0) ? Complex(0.0, 0.0)
                    : Complex(1.0 / (2.0 * std::abs(double(n))), 0.0);
  });
  const double w = circle.dtheta();
  for (int i = 0; i < circle.m; ++i) {
    const Complex zi = circle.node(i);
    Complex acc(0.0, 0.0);
    for (int j = 0; j < circle.m; ++j) {
      const double smooth =
          (i == j) ? faddeev_green_smooth(k, Complex(0.0, 0.0))
                   : faddeev_green_smooth(k, zi - circle.node(j));
      acc += smooth * sigma[j];
    }
    out[i] += acc * w;
  }
  return out;
}

namespace {

// Node-space matrix of the truncated mode-space difference map D:
// synthesis(E1) . D . analysis(E2) with E2 including the 1/m factor.
Eigen::MatrixXcd node_space_difference(const DtNMap& dtn_gamma,
                                       const DtNMap& dtn_reference,
                                       const CircleQuadrature& circle) {
  if (dtn_gamma.N != dtn_reference.N)
    throw std::invalid_argument("faddeev_traces: DtN maps of different order");
  const int N = dtn_gamma.N, m = circle.m, d = 2 * N + 1;
  if (m <= 2 * N + 1)
    throw std::invalid_argument("faddeev_traces: circle too coarse for N");

  Eigen::MatrixXcd syn(m, d), ana(d, m);
  for (int j = 0; j < m; ++j)
    for (int n = -N; n <= N; ++n) {
      syn(j, n + N) = std::polar(1.0, n * circle.theta(j));
      ana(n + N, j) = std::polar(1.0 / m, -n * circle.theta(j));
    }
  return syn * (dtn_gamma.M - dtn_reference.M) * ana;
}

// Apply the full map L_gamma = |n| multiplier + truncated difference.
std::vector<Complex> apply_dtn_full(const DtNMap& dtn_gamma,
                                    const DtNMap& dtn_reference,
                                    const std::vector<Complex>& f) {
  const int m = int(f.size()), N = dtn_gamma.N;
  std::vector<Complex> hat = fourier_coeffs(f);
  std::vector<Complex> out(m);
  for (int b = 0; b < m; ++b)
    out[b] = std::abs(double(bin_freq(b, m))) * hat[b];
  const Eigen::MatrixXcd D = dtn_gamma.M - dtn_reference.M;
  for (int n = -N; n <= N; ++n) {
    Complex acc(0.0, 0.0);
    for (int q = -N; q <= N; ++q)
      acc += D(n + N, q + N) * hat[(q + m) % m];
    out[(n + m) % m] += acc;
  }
  return fourier_synthesis(out);
}

}  // namespace

FaddeevTraces faddeev_traces(const DtNMap& dtn_gamma,
                             const DtNMap& dtn_reference, Complex k,
                             const CircleQuadrature& circle) {
  require_spectral_parameter(k);
  require_unit_circle(circle);
  const int m = circle.m;
  const Complex p = std::conj(k) / 2.0;

  const Eigen::MatrixXcd S = single_layer_matrix(p, circle);
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(m, m);

  Eigen::VectorXcd rhs(m);
  for (int j = 0; j < m; ++j)
    rhs[j] = std::exp(Complex(0.0, 1.0) * circle.node(j) * p);

  FaddeevTraces tr;
  tr.k = k;
  const Complex scale = 2.0 / (Complex(0.0, 1.0) * std::conj(k));

  auto solve_one = [&](const Eigen::MatrixXcd& diff) {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(I + S * diff);
    const double rc = lu.rcond();
    tr.condition = std::max(tr.condition, 1.0 / std::max(rc, 1e-300));
    Eigen::VectorXcd g = lu.solve(rhs);
    std::vector<Complex> u(m);
    for (int j = 0; j < m; ++j) u[j] = scale * g[j];
    return u;
  };

  tr.U1 = solve_one(node_space_difference(dtn_gamma, dtn_reference, circle));
  tr.U2 = solve_one(node_space_difference(dtn_conjugate(dtn_gamma),
                                          dtn_conjugate(dtn_reference), circle));
  for (auto& v : tr.U2) v = std::conj(v);
  return tr;
}

BoundaryTrace psi_boundary(const FaddeevTraces& traces,
                           const DtNMap& dtn_gamma,
                           const DtNMap& dtn_reference,
                           const CircleQuadrature& circle) {
  require_unit_circle(circle);
  const int m = circle.m;
  if (int(traces.U1.size()) != m || int(traces.U2.size()) != m)
    throw std::invalid_argument("psi_boundary: trace size mismatch");

  const std::vector<Complex> LU1 =
      apply_dtn_full(dtn_gamma, dtn_reference, traces.U1);
  const std::vector<Complex> LU2 =
      apply_dtn_full(dtn_gamma, dtn_reference, traces.U2);
  const std::vector<Complex> dU1 = arclength_derivative(circle, traces.U1);
  const std::vector<Complex> dU2 = arclength_derivative(circle, traces.U2);

  BoundaryTrace bt;
  bt.k = traces.k;
  bt.circle = circle;
  bt.psi.resize(m);
  const Complex i1(0.0, 1.0);
  for (int j = 0; j < m; ++j) {
    const Complex kap = circle.node(j);  // outward normal on the unit circle
    Mat2& p = bt.psi[j];
    p.a11 = 0.5 * std::conj(kap) * (LU1[j] - i1 * dU1[j]);
    p.a12 = 0.5 * std::conj(kap) * (LU2[j] - i1 * dU2[j]);
    p.a21 = std::conj(0.5 * kap * (LU1[j] + i1 * dU1[j]));
    p.a22 = std::conj(0.5 * kap * (LU2[j] + i1 * dU2[j]));
  }
  return bt;
}

}  // namespace dbar
