#pragma once

/// \file scattering.hpp
/// Generalized scattering data assembled on a spectral layout: the
/// off-diagonal part of the diagonal restriction h(k,k) at the exterior
/// annulus nodes, and the dense 2x2 kernel h(s',s) on pairs of truncation
/// circle nodes.  Two assembly paths exist: volumetric quadrature of the
/// solver's phased source planes, and contour integration of boundary
/// traces of psi around the physical domain.  Both are exposed so they can
/// be cross-checked; the contour path is the one available when only
/// boundary data of the conductivity problem is given.

#include <optional>
#include <vector>

#include "dbar/layout.hpp"
#include "dbar/lippmann.hpp"
#include "dbar/potential.hpp"
#include "dbar/quadrature.hpp"
#include "dbar/types.hpp"

namespace dbar {

/// Values of psi(., k) sampled on the physical boundary circle.
struct BoundaryTrace {
  Complex k;
  CircleQuadrature circle;  ///< physical boundary, counterclockwise
  std::vector<Mat2> psi;    ///< psi at circle.node(j), j = 0..m-1
};

enum class Provenance { volumetric, boundary };

/// Scattering data pinned to a layout.  The diagonal restriction keeps
/// only the off-diagonal matrix entries: the diagonal part never enters
/// the reconstruction operator, and dropping it at the type level makes
/// that projection irreversible by construction.
struct ScatteringData {
  SpectralLayout layout;

  /// Off-diagonal entries of h(k,k) at layout.ext_nodes (same indexing).
  std::vector<Complex> h12, h21;

  /// Dense kernel on truncation-circle node pairs, row-major:
  /// value at (row i, col j) is h(s_i, s_j) with s = layout.boundary
  /// nodes; the second argument is the spectral parameter of the solve.
  std::vector<Mat2> h_bd;

  /// Off-diagonal entries of h(k,k) at layout.rec_nodes.  The recovery
  /// ring is not part of the solve grid, but evaluating solutions there
  /// needs the same diagonal restriction; either both vectors are sized
  /// like rec_nodes or both are empty (no recovery samples available).
  std::vector<Complex> h12_rec, h21_rec;

  Provenance provenance = Provenance::volumetric;
  std::optional<double> truncation_radius;

  const Mat2& bd(int i, int j) const {
    return h_bd[std::size_t(i) * layout.boundary.m + j];
  }
  Mat2& bd(int i, int j) {
    return h_bd[std::size_t(i) * layout.boundary.m + j];
  }

  /// Largest |h| entry over the stored diagonal restriction.
  double max_diag_abs() const;
  /// True when every stored entry is exactly zero.
  bool all_zero() const;
};

/// Off-diagonal part of h(k,k) as a matrix, looked up from the stored
/// samples: k must coincide (to a tight relative tolerance) with an
/// exterior node or a recovery node.  Beyond a recorded truncation radius
/// the value is zero by definition.  Anywhere else the data simply does
/// not sample h and the call throws.
Mat2 h_offdiag_at(const ScatteringData& data, Complex k);

/// Volumetric scattering integral for one solved spectral parameter:
///   h(s, k) = (1/(2 pi)^2) int e^{-i(k zbar + sbar z)/2} Q conj(mu) dxdy.
/// The solver's stored source planes are exactly the phased integrand at
/// s = k, so only the ratio phase e^{-i(sbar - kbar) z / 2} is applied
/// here.  Requires a standard-kind solution.
Mat2 h_volumetric(const ScatteringSolution& sol, Complex s);

/// Contour form of the same integral from boundary values of psi:
///   h(s, k) = (1/(2 pi)^2) (1/(2i)) oint e^{-i sbar z / 2} psi(z, k) dz.
/// This follows from oint f dz = 2i int dbar(f) dxdy applied to
/// f = e^{-i sbar z / 2} psi, whose dbar is the phased integrand because
/// psi solves dbar psi = Q conj(psi) and the prefactor is holomorphic.
Mat2 h_contour(const BoundaryTrace& trace, Complex s);

/// Sample psi of a solved problem on a boundary circle.
BoundaryTrace trace_psi(const ScatteringSolution& sol,
                        const CircleQuadrature& circle);

/// Assemble scattering data by solving the forward problem at every
/// exterior node, every truncation-circle node and every recovery-ring
/// node (volumetric path).  Parallel over spectral nodes; each node
/// writes only its own slots, so the result is bit-identical across
/// worker counts.  A solver failure at any node (near-exceptional
/// parameter) is reported as a layout error naming the node.
ScatteringData assemble_scattering(const PotentialField& Q,
                                   const SpectralLayout& layout,
                                   const DiracOptions& opt = {});

/// Assemble scattering data from boundary traces (contour path):
/// ext_traces[i] carries psi(., k) for k = layout.ext_nodes[i] and
/// bd_traces[j] for k = layout.boundary.node(j).  rec_traces, when
/// given, must match layout.rec_nodes and fills the recovery-ring
/// samples; left empty, the assembled data carries none.
ScatteringData assemble_scattering(const std::vector<BoundaryTrace>& ext_traces,
                                   const std::vector<BoundaryTrace>& bd_traces,
                                   const SpectralLayout& layout,
                                   const std::vector<BoundaryTrace>& rec_traces = {});

/// Zero the diagonal restriction outside |k| <= R and record R.  The
/// boundary kernel is never truncated (it lives on |k| = A <= R).
ScatteringData truncate(const ScatteringData& data, double R);

}  // namespace dbar
