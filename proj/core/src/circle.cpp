#include "dbar/circle.hpp"

#include <cmath>
#include <stdexcept>

#include "dbar/fft.hpp"

namespace dbar {

std::vector<Complex> fourier_coeffs(const std::vector<Complex>& samples) {
  std::vector<Complex> c = dft(samples);
  const double scale = 1.0 / double(samples.size());
  for (auto& x : c) x *= scale;
  return c;
}

std::vector<Complex> fourier_synthesis(const std::vector<Complex>& coeffs) {
  std::vector<Complex> s = coeffs;
  const double scale = double(coeffs.size());
  for (auto& x : s) x *= scale;
  fft1(s, +1);
  return s;
}

std::vector<Complex> fourier_multiplier(
    const std::vector<Complex>& samples,
    const std::function<Complex(int)>& mult) {
  const int m = int(samples.size());
  std::vector<Complex> c = samples;
  fft1(c, -1);
  for (int b = 0; b < m; ++b) c[b] *= mult(bin_freq(b, m));
  fft1(c, +1);
  return c;
}

std::vector<Complex> hardy_plus(const std::vector<Complex>& samples) {
  return fourier_multiplier(
      samples, [](int n) { return n >= 0 ? Complex(1.0) : Complex(0.0); });
}

std::vector<Complex> hardy_minus(const std::vector<Complex>& samples) {
  return fourier_multiplier(
      samples, [](int n) { return n < 0 ? Complex(1.0) : Complex(0.0); });
}

Complex circle_cauchy(const CircleQuadrature& circle,
                      const std::vector<Complex>& phi, Complex k,
                      CircleSide side) {
  const int m = circle.m;
  if (int(phi.size()) != m)
    throw std::invalid_argument("circle_cauchy: sample count mismatch");

  if (side == CircleSide::on_minus) {
    // k must be one of the nodes.
    const double ang = std::arg(k - circle.center);
    const double t = ang / circle.dtheta();
    const int j = int(std::lround(t)) % m;
    const int jj = (j + m) % m;
    if (std::abs(circle.node(jj) - k) > 1e-9 * circle.radius)
      throw std::invalid_argument("circle_cauchy: on_minus needs a node");
    return circle_cauchy_interior_trace(phi)[jj];
  }

  const std::vector<Complex> c = fourier_coeffs(phi);
  const Complex w = (k - circle.center) / circle.radius;
  const double aw = std::abs(w);
  Complex acc(0.0, 0.0);
  if (side == CircleSide::inside) {
    if (aw >= 1.0)
      throw std::invalid_argument("circle_cauchy: k not inside");
    // sum over n >= 0 of c_n w^n, ascending bins 0 .. m/2-1
    Complex wp(1.0, 0.0);
    for (int b = 0; b < m / 2; ++b) {
      acc += c[b] * wp;
      wp *= w;
    }
  } else {
    if (aw <= 1.0)
      throw std::invalid_argument("circle_cauchy: k not outside");
    // -sum over n <= -1 of c_n w^{n}; bins m-1 down to m/2 carry
    // n = -1 .. -m/2
    const Complex iw = 1.0 / w;
    Complex wp = iw;
    for (int q = 1; q <= m / 2; ++q) {
      acc -= c[(m - q) % m] * wp;
      wp *= iw;
    }
  }
  return acc;
}

std::vector<Complex> circle_cauchy_interior_trace(
    const std::vector<Complex>& phi) {
  return hardy_plus(phi);
}

std::vector<Complex> circle_cauchy_exterior_trace(
    const std::vector<Complex>& phi) {
  std::vector<Complex> out = hardy_minus(phi);
  for (auto& x : out) x = -x;
  return out;
}

std::vector<Complex> arclength_derivative(const CircleQuadrature& circle,
                                          const std::vector<Complex>& f) {
  const int m = circle.m;
  const double inv_r = 1.0 / circle.radius;
  return fourier_multiplier(f, [m, inv_r](int n) {
    if (n == -m / 2) return Complex(0.0, 0.0);  // Nyquist zeroed
    return Complex(0.0, n * inv_r);
  });
}

}  // namespace dbar
