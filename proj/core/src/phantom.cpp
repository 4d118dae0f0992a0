#include "dbar/phantom.hpp"

#include <cmath>
#include <stdexcept>

namespace dbar {
namespace {

double bump_profile(double t2) {
  // exp(1 - 1/(1 - t^2)) for t^2 < 1, else 0; C-infinity with compact
  // support.
  if (t2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t2));
}

double c1_profile(double t2) {
  // (1 - t^2)^2: vanishes with its first radial derivative at t = 1 but
  // its second derivative jumps there.
  if (t2 >= 1.0) return 0.0;
  const double s = 1.0 - t2;
  return s * s;
}

double ring_profile(double r) {
  // Three concentric smooth rings. The log-conductivity of the resonant
  // preset is this profile times a complex amplitude; the ring count and
  // spacing were chosen so that the homogeneous scattering system becomes
  // singular on a circle of spectral radii near |k| = 15.5 (grid 64^2)
  // while Re(gamma) stays positive.
  auto one = [](double t) {
    const double t2 = t * t;
    if (t2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - t2));
  };
  return one((r - 0.20) / 0.13) + one((r - 0.50) / 0.13) +
         one((r - 0.80) / 0.13);
}

}  // namespace

PhantomParams default_phantom_params(const std::string& preset) {
  PhantomParams p;
  if (preset == "one") {
    p.contrast = Complex(0.0, 0.0);
  } else if (preset == "bump" || preset == "c1") {
    p.contrast = Complex(0.3, 0.2);
  } else if (preset == "exc") {
    // Complex log-amplitude of the resonant ring phantom. Designed so that
    // rho^2/4 matches an eigenvalue of the contrast-independent part of the
    // homogeneous scattering operator, which places an exact singular circle
    // at |k| ~ 15.5; |Im| < pi/2 keeps Re(gamma) > 0.
    p.contrast = Complex(3.340, 1.276);
    p.rho = 0.95;
  } else {
    throw std::invalid_argument("make_phantom: unknown preset '" + preset +
                                "'");
  }
  return p;
}

Conductivity make_phantom(const std::string& preset, int n, double half_width,
                          const PhantomParams& params) {
  if (params.rho <= 0.0 || params.rho >= 1.0)
    throw std::invalid_argument("make_phantom: rho must lie in (0, 1)");

  Conductivity c;
  c.gamma = ScalarGrid(half_width, n);
  c.support_radius = (preset == "one") ? 0.0 : params.rho;
  c.smoothness = (preset == "c1") ? "c1" : "smooth";

  double (*profile)(double) = nullptr;
  if (preset == "one") {
    profile = nullptr;
  } else if (preset == "bump") {
    profile = bump_profile;
  } else if (preset == "c1") {
    profile = c1_profile;
  } else if (preset != "exc") {
    throw std::invalid_argument("make_phantom: unknown preset '" + preset +
                                "'");
  }

  const Complex amp = params.contrast;
  const double rho = params.rho;
  if (preset == "exc") {
    // Multiplicative phantom: gamma = exp(amplitude * profile). The
    // principal log recovers the exponent exactly because
    // |arg gamma| <= |Im amplitude| < pi.
    c.analytic = [amp](Complex z) {
      return std::exp(amp * ring_profile(std::abs(z)));
    };
  } else if (profile) {
    c.analytic = [amp, rho, profile](Complex z) {
      return Complex(1.0, 0.0) + amp * profile(std::norm(z) / (rho * rho));
    };
  } else {
    c.analytic = [](Complex) { return Complex(1.0, 0.0); };
  }

  double contrast = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Complex g = c.analytic(c.gamma.z(i, j));
      c.gamma.at(i, j) = g;
      contrast = std::max(contrast, std::abs(g - 1.0));
    }
  c.contrast = contrast;
  validate_conductivity(c);
  return c;
}

Conductivity make_phantom(const std::string& preset, int n,
                          double half_width) {
  return make_phantom(preset, n, half_width, default_phantom_params(preset));
}

}  // namespace dbar
