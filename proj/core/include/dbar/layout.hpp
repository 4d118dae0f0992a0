#pragma once

/// \file layout.hpp
/// Spectral-domain sampling layout: the truncation disc D = {|k| <= A},
/// its boundary rule, the polar exterior grid on the annulus [A, R_max],
/// and the recovery ring |k| = R_rec.

#include <vector>

#include "dbar/quadrature.hpp"
#include "dbar/types.hpp"

namespace dbar {

struct LayoutOptions {
  double A = 4.0;
  Complex k0{0.0, 0.0};    ///< zero means "auto": (A - 1/2) e^{i pi/7}
  double R_max = 0.0;      ///< zero means 3 A
  double R_rec = 0.0;      ///< zero means 2 A
  int radial_panels = 8;   ///< geometric panels on [A, R_max]
  int panel_points = 4;    ///< Gauss-Legendre points per panel
  int n_theta = 64;        ///< uniform angles of the exterior grid
  int m_boundary = 128;    ///< nodes on |k| = A
  int rec_angles = 8;      ///< recovery directions on |k| = R_rec
};

struct SpectralLayout {
  double A = 0.0;
  Complex k0;
  double R_max = 0.0;
  double R_rec = 0.0;

  CircleQuadrature boundary;  ///< |k| = A, counterclockwise

  Rule1D radial;              ///< nodes/weights for \int_A^{R_max} dr
  int n_theta = 0;

  /// Exterior annulus nodes, ring-major: node(ir, jt) =
  /// ext_nodes[ir * n_theta + jt] = r_{ir} e^{2 pi i jt / n_theta}.
  std::vector<Complex> ext_nodes;
  /// Area weights r dr dtheta matching ext_nodes.
  std::vector<double> ext_weights;

  /// Recovery points on |k| = R_rec (angles offset by half a step so they
  /// avoid the exterior-grid angles).
  std::vector<Complex> rec_nodes;

  int n_radial() const { return int(radial.size()); }
  int n_ext() const { return int(ext_nodes.size()); }
  std::size_t ext_index(int ir, int jt) const {
    return std::size_t(ir) * n_theta + jt;
  }
};

/// Build a layout; throws std::invalid_argument on inconsistent options
/// (A <= 1, k0 on or outside |k| = A, R_rec outside (A, R_max), ...).
SpectralLayout make_layout(const LayoutOptions& opt);

}  // namespace dbar
