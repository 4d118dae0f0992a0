#include "dbar/potential.hpp"

#include <cmath>
#include <stdexcept>

#include "dbar/grid.hpp"

namespace dbar {

void validate_conductivity(const Conductivity& c, double tol) {
  const auto& g = c.gamma;
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      const Complex v = g.at(i, j);
      if (!(v.real() > 0.0))
        throw std::invalid_argument("conductivity: Re gamma must be > 0");
      if (std::abs(g.z(i, j)) > 1.0 && std::abs(v - 1.0) > tol)
        throw std::invalid_argument(
            "conductivity: gamma must equal 1 outside the unit disc");
    }
}

namespace {

// Cubic Catmull-Rom weight set for a fractional offset t in [0, 1).
void catmull_rom(double t, double w[4]) {
  const double t2 = t * t, t3 = t2 * t;
  w[0] = 0.5 * (-t3 + 2.0 * t2 - t);
  w[1] = 0.5 * (3.0 * t3 - 5.0 * t2 + 2.0);
  w[2] = 0.5 * (-3.0 * t3 + 4.0 * t2 + t);
  w[3] = 0.5 * (t3 - t2);
}

}  // namespace

Complex gamma_at(const Conductivity& c, Complex z) {
  if (std::abs(z) >= 1.0) return Complex(1.0, 0.0);
  if (c.analytic) return c.analytic(z);

  const auto& g = c.gamma;
  const double h = g.spacing();
  // Continuous node index of z (node i sits at -s + i h).
  const double fx = (z.real() + g.half_width) / h;
  const double fy = (z.imag() + g.half_width) / h;
  const int ix = static_cast<int>(std::floor(fx));
  const int iy = static_cast<int>(std::floor(fy));
  double wx[4], wy[4];
  catmull_rom(fx - ix, wx);
  catmull_rom(fy - iy, wy);

  auto sample = [&](int i, int j) -> Complex {
    if (i < 0 || j < 0 || i >= g.n || j >= g.n) return Complex(1.0, 0.0);
    return g.at(i, j);
  };
  Complex acc(0.0, 0.0);
  for (int b = 0; b < 4; ++b)
    for (int a = 0; a < 4; ++a)
      acc += wx[a] * wy[b] * sample(ix - 1 + a, iy - 1 + b);
  return acc;
}

Conductivity conjugate(const Conductivity& c) {
  Conductivity out = c;
  for (auto& v : out.gamma.v) v = std::conj(v);
  if (c.analytic) {
    auto f = c.analytic;
    out.analytic = [f](Complex z) { return std::conj(f(z)); };
  }
  return out;
}

double PotentialField::max_abs() const {
  return std::max(max_norm(Q12), max_norm(Q21));
}

PotentialField PotentialField::scaled(double a) const {
  PotentialField out = *this;
  for (auto& x : out.Q12.v) x *= a;
  for (auto& x : out.Q21.v) x *= a;
  return out;
}

PotentialField gamma_to_Q(const Conductivity& c) {
  validate_conductivity(c);
  const auto& g = c.gamma;

  ScalarGrid lg(g.half_width, g.n);
  for (std::size_t t = 0; t < g.v.size(); ++t) lg.v[t] = std::log(g.v[t]);

  ScalarGrid dz = d_spectral(lg);      // d/dz log gamma
  ScalarGrid dzb = dbar_spectral(lg);  // d/dzbar log gamma

  PotentialField out;
  out.Q12 = ScalarGrid(g.half_width, g.n);
  out.Q21 = ScalarGrid(g.half_width, g.n);
  out.support_radius = c.support_radius;
  out.source_gamma = c;

  const double r2 = c.support_radius * c.support_radius;
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      if (std::norm(g.z(i, j)) > r2) continue;  // clip spectral ringing
      const std::size_t t = g.idx(i, j);
      out.Q12.v[t] = -0.5 * dz.v[t];
      out.Q21.v[t] = std::conj(-0.5 * dzb.v[t]);
    }
  return out;
}

}  // namespace dbar
