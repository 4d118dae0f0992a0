#include "dbar/layout.hpp"

#include <cmath>
#include <stdexcept>

namespace dbar {

SpectralLayout make_layout(const LayoutOptions& opt) {
  SpectralLayout L;
  L.A = opt.A;
  if (!(L.A > 1.0))
    throw std::invalid_argument("layout: A must exceed the potential "
                                "support scale (A > 1)");
  L.R_max = (opt.R_max > 0.0) ? opt.R_max : 3.0 * L.A;
  L.R_rec = (opt.R_rec > 0.0) ? opt.R_rec : 2.0 * L.A;
  if (!(L.A < L.R_rec && L.R_rec < L.R_max))
    throw std::invalid_argument("layout: need A < R_rec < R_max");

  if (opt.k0 == Complex(0.0, 0.0)) {
    const double r0 = L.A - 0.5;
    L.k0 = r0 * Complex(std::cos(kPi / 7.0), std::sin(kPi / 7.0));
  } else {
    L.k0 = opt.k0;
  }
  if (!(std::abs(L.k0) < L.A))
    throw std::invalid_argument("layout: k0 must lie strictly inside |k| = A");

  L.boundary = CircleQuadrature(Complex(0.0, 0.0), L.A, opt.m_boundary);

  L.radial = geometric_panels(L.A, L.R_max, opt.radial_panels,
                              opt.panel_points);
  L.n_theta = opt.n_theta;
  if (L.n_theta <= 0 || (L.n_theta % 2) != 0)
    throw std::invalid_argument("layout: n_theta must be positive even");

  const int nr = L.n_radial();
  L.ext_nodes.resize(std::size_t(nr) * L.n_theta);
  L.ext_weights.resize(L.ext_nodes.size());
  const double dtheta = 2.0 * kPi / L.n_theta;
  for (int ir = 0; ir < nr; ++ir) {
    const double r = L.radial.x[ir];
    const double wr = L.radial.w[ir] * r * dtheta;  // r dr dtheta
    for (int jt = 0; jt < L.n_theta; ++jt) {
      const double th = dtheta * jt;
      L.ext_nodes[L.ext_index(ir, jt)] =
          r * Complex(std::cos(th), std::sin(th));
      L.ext_weights[L.ext_index(ir, jt)] = wr;
    }
  }

  L.rec_nodes.resize(opt.rec_angles);
  for (int j = 0; j < opt.rec_angles; ++j) {
    const double th = 2.0 * kPi * (j + 0.5) / opt.rec_angles;
    L.rec_nodes[j] = L.R_rec * Complex(std::cos(th), std::sin(th));
  }
  return L;
}

}  // namespace dbar
