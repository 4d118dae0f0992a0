#include "dbar/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "dbar/fft.hpp"

namespace dbar {

double l2_norm(const ScalarGrid& g) {
  double acc = 0.0;
  for (const auto& x : g.v) acc += std::norm(x);
  return std::sqrt(acc) * g.spacing();
}

double max_norm(const ScalarGrid& g) {
  double m = 0.0;
  for (const auto& x : g.v) m = std::max(m, std::abs(x));
  return m;
}

double rel_l2(const ScalarGrid& a, const ScalarGrid& b) {
  if (a.v.size() != b.v.size()) throw std::invalid_argument("rel_l2: shape");
  return rel_l2(a.v, b.v);
}

std::vector<std::uint32_t> disc_indices(const ScalarGrid& g, double radius) {
  std::vector<std::uint32_t> out;
  const double r2 = radius * radius;
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      const Complex z = g.z(i, j);
      if (std::norm(z) <= r2) out.push_back(std::uint32_t(g.idx(i, j)));
    }
  return out;
}

void apply_real_phase(ScalarGrid& g, Complex k, int phase) {
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      const Complex z = g.z(i, j);
      const double arg = std::real(std::conj(k) * z) * phase;
      g.at(i, j) *= Complex(std::cos(arg), std::sin(arg));
    }
}

namespace {

// Angular frequency for FFT bin i of an n-point grid with spacing h.
// The unpaired Nyquist bin of an even-length grid is treated as frequency
// zero: a first derivative built from it has no conjugate partner, which
// would make the derivative of a real field complex.
inline double freq(int i, int n, double h) {
  if (n % 2 == 0 && i == n / 2) return 0.0;
  const int k = (i < n / 2) ? i : i - n;
  return 2.0 * kPi * k / (n * h);
}

ScalarGrid spectral_derivative(const ScalarGrid& g, bool bar) {
  ScalarGrid out = g;
  fft2(out.v, g.n, -1);
  const double h = g.spacing();
  for (int j = 0; j < g.n; ++j) {
    const double ky = freq(j, g.n, h);
    for (int i = 0; i < g.n; ++i) {
      const double kx = freq(i, g.n, h);
      // d/dzbar <-> (i/2)(kx + i ky);  d/dz <-> (i/2)(kx - i ky)
      const Complex sym =
          bar ? Complex(0.0, 0.5) * Complex(kx, ky)
              : Complex(0.0, 0.5) * Complex(kx, -ky);
      out.v[out.idx(i, j)] *= sym;
    }
  }
  fft2(out.v, g.n, +1);
  return out;
}

}  // namespace

ScalarGrid dbar_spectral(const ScalarGrid& g) {
  return spectral_derivative(g, true);
}

ScalarGrid d_spectral(const ScalarGrid& g) {
  return spectral_derivative(g, false);
}

}  // namespace dbar
