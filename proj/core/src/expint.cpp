#include "dbar/expint.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dbar {
namespace {

constexpr double kEulerGamma = 0.5772156649015328606065120900824024;

// Power series E1(z) = -gamma - Ln z + sum_{k>=1} (-1)^{k+1} z^k / (k k!).
// Absolute error ~ e^{|z|} eps from cancellation, so the series is usable
// wherever |E1| itself is not exponentially small: |z| <= ~8 anywhere, and
// any moderate |z| in the left wedge Re z < -|z|/2 where |E1| >= e^{|z|/2}/|z|.
Complex e1_series(Complex z) {
  Complex sum(0.0, 0.0);
  Complex term(1.0, 0.0);  // z^k / k!
  for (int k = 1; k <= 160; ++k) {
    term *= z / double(k);
    const Complex add = term / double(k);
    sum += (k % 2 == 1) ? add : -add;
    if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return -kEulerGamma - std::log(z) + sum;
}

// Modified Lentz evaluation of the continued fraction
//   E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(...)))),
// i.e. b_0 = z + 1, a_j = -j^2, b_j = z + 2j + 1.  Converges for z off the
// negative real axis; effective for |z| >= ~8.
Complex e1_contfrac(Complex z) {
  const double tiny = 1e-290;
  Complex f(z.real() + 1.0, z.imag());
  if (f == Complex(0.0, 0.0)) f = tiny;
  Complex C = f, D(0.0, 0.0);
  for (int j = 1; j <= 400; ++j) {
    const Complex a(-double(j) * double(j), 0.0);
    const Complex b(z.real() + 2.0 * j + 1.0, z.imag());
    D = b + a * D;
    if (D == Complex(0.0, 0.0)) D = tiny;
    C = b + a / C;
    if (C == Complex(0.0, 0.0)) C = tiny;
    D = 1.0 / D;
    const Complex delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-z) / f;
}

}  // namespace

Complex expint_e1(Complex z) {
  if (z == Complex(0.0, 0.0))
    throw std::invalid_argument("expint_e1: z = 0");
  // Schwarz reflection: compute in the closed upper half-plane.
  if (z.imag() < 0.0) return std::conj(expint_e1(std::conj(z)));
  if (z.imag() == 0.0 && z.real() < 0.0) {
    // Principal value on the cut; Im set to the limit from above (-pi
    // after conjugation bookkeeping: limit from above carries -i pi).
    const Complex v = expint_e1(Complex(z.real(), 1e-300));
    return {v.real(), -kPi};
  }
  const double r = std::abs(z);
  if (r <= 8.0) return e1_series(z);
  // The continued fraction degrades near the branch cut (1e-2 relative at
  // |z| ~ 8..10, |arg z| > 3.1); the series stays accurate there.
  if (z.real() < -0.5 * r) return e1_series(z);
  return e1_contfrac(z);
}

}  // namespace dbar
