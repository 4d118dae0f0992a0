#include "dbar/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <stdexcept>

namespace dbar {

CircleQuadrature::CircleQuadrature(Complex c, double r, int m_)
    : center(c), radius(r), m(m_) {
  if (m <= 0 || (m % 2) != 0)
    throw std::invalid_argument("CircleQuadrature: m must be positive even");
  if (r <= 0.0)
    throw std::invalid_argument("CircleQuadrature: radius must be positive");
}

Complex CircleQuadrature::unit(int j) const {
  const double t = theta(j);
  return {std::cos(t), std::sin(t)};
}

Complex CircleQuadrature::node(int j) const { return center + radius * unit(j); }

Complex CircleQuadrature::dz_weight(int j) const {
  return Complex(0.0, 1.0) * radius * unit(j) * dtheta();
}

Complex CircleQuadrature::integrate_dz(const std::vector<Complex>& f) const {
  if (int(f.size()) != m)
    throw std::invalid_argument("integrate_dz: sample count mismatch");
  Complex acc{0.0, 0.0};
  for (int j = 0; j < m; ++j) acc += f[j] * dz_weight(j);
  return acc;
}

Complex CircleQuadrature::integrate_dtheta(
    const std::vector<Complex>& f) const {
  if (int(f.size()) != m)
    throw std::invalid_argument("integrate_dtheta: sample count mismatch");
  Complex acc{0.0, 0.0};
  for (int j = 0; j < m; ++j) acc += f[j];
  return acc * dtheta();
}

Rule1D gauss_legendre(double a, double b, int npts) {
  if (npts <= 0) throw std::invalid_argument("gauss_legendre: npts");
  gsl_integration_glfixed_table* t =
      gsl_integration_glfixed_table_alloc(std::size_t(npts));
  Rule1D r;
  r.x.resize(npts);
  r.w.resize(npts);
  for (int i = 0; i < npts; ++i)
    gsl_integration_glfixed_point(a, b, std::size_t(i), &r.x[i], &r.w[i], t);
  gsl_integration_glfixed_table_free(t);
  return r;
}

Rule1D geometric_panels(double a, double b, int npanels, int npts) {
  if (!(0.0 < a && a < b))
    throw std::invalid_argument("geometric_panels: need 0 < a < b");
  if (npanels <= 0) throw std::invalid_argument("geometric_panels: npanels");
  const double ratio = std::pow(b / a, 1.0 / npanels);
  Rule1D out;
  double lo = a;
  for (int p = 0; p < npanels; ++p) {
    const double hi = (p + 1 == npanels) ? b : lo * ratio;
    Rule1D panel = gauss_legendre(lo, hi, npts);
    out.x.insert(out.x.end(), panel.x.begin(), panel.x.end());
    out.w.insert(out.w.end(), panel.w.begin(), panel.w.end());
    lo = hi;
  }
  return out;
}

}  // namespace dbar
