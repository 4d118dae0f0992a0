#include "dbar/scattering.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dbar/threadpool.hpp"

namespace dbar {

namespace {

std::string node_label(Complex k) {
  return "(" + std::to_string(k.real()) + ", " + std::to_string(k.imag()) +
         ")";
}

}  // namespace

double ScatteringData::max_diag_abs() const {
  double m = 0.0;
  for (const Complex& c : h12) m = std::max(m, std::abs(c));
  for (const Complex& c : h21) m = std::max(m, std::abs(c));
  return m;
}

bool ScatteringData::all_zero() const {
  for (const Complex& c : h12)
    if (c != Complex()) return false;
  for (const Complex& c : h21)
    if (c != Complex()) return false;
  for (const Complex& c : h12_rec)
    if (c != Complex()) return false;
  for (const Complex& c : h21_rec)
    if (c != Complex()) return false;
  for (const Mat2& m : h_bd)
    if (m.a11 != Complex() || m.a12 != Complex() || m.a21 != Complex() ||
        m.a22 != Complex())
      return false;
  return true;
}

Mat2 h_offdiag_at(const ScatteringData& data, Complex k) {
  const double tol = 1e-9 * std::max(1.0, std::abs(k));
  const SpectralLayout& L = data.layout;
  for (std::size_t t = 0; t < L.ext_nodes.size(); ++t)
    if (std::abs(k - L.ext_nodes[t]) < tol)
      return Mat2{Complex(), data.h12[t], data.h21[t], Complex()};
  if (!data.h12_rec.empty())
    for (std::size_t t = 0; t < L.rec_nodes.size(); ++t)
      if (std::abs(k - L.rec_nodes[t]) < tol)
        return Mat2{Complex(), data.h12_rec[t], data.h21_rec[t], Complex()};
  if (data.truncation_radius && std::abs(k) > *data.truncation_radius)
    return Mat2::zero();
  throw std::invalid_argument("h_offdiag_at: data does not sample h at " +
                              node_label(k));
}

Mat2 h_volumetric(const ScatteringSolution& sol, Complex s) {
  if (sol.kind != ScatteringSolution::Kind::standard)
    throw std::invalid_argument(
        "h_volumetric: requires a standard-kind solution");
  const ScalarGrid& s1a = sol.s1a;
  const int n = s1a.n;
  const Complex dk = std::conj(s) - std::conj(sol.k);

  Mat2 acc = Mat2::zero();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const std::size_t t = s1a.idx(i, j);
      const Complex a1 = sol.s1a.v[t], b1 = sol.s1b.v[t];
      const Complex a2 = sol.s2a.v[t], b2 = sol.s2b.v[t];
      if (a1 == Complex() && b1 == Complex() && a2 == Complex() &&
          b2 == Complex())
        continue;
      const Complex ph = std::exp(Complex(0.0, -0.5) * dk * s1a.z(i, j));
      acc.a11 += ph * a1;
      acc.a21 += ph * b1;
      acc.a12 += ph * a2;
      acc.a22 += ph * b2;
    }
  const double h = s1a.spacing();
  acc *= h * h / (4.0 * kPi * kPi);
  return acc;
}

Mat2 h_contour(const BoundaryTrace& trace, Complex s) {
  const int m = trace.circle.m;
  if (int(trace.psi.size()) != m)
    throw std::invalid_argument("h_contour: trace size mismatch");
  Mat2 acc = Mat2::zero();
  for (int j = 0; j < m; ++j) {
    const Complex z = trace.circle.node(j);
    const Complex ph = std::exp(Complex(0.0, -0.5) * std::conj(s) * z);
    Mat2 term = trace.psi[j];
    term *= ph * trace.circle.dz_weight(j);
    acc += term;
  }
  // 1/(2i) from the area-to-contour identity, 1/(2 pi)^2 from the data
  // normalization.
  acc *= Complex(0.0, -0.5) / (4.0 * kPi * kPi);
  return acc;
}

BoundaryTrace trace_psi(const ScatteringSolution& sol,
                        const CircleQuadrature& circle) {
  BoundaryTrace trace;
  trace.k = sol.k;
  trace.circle = circle;
  trace.psi.resize(circle.m);
  for (int j = 0; j < circle.m; ++j)
    trace.psi[j] = sol.eval_psi(circle.node(j));
  return trace;
}

ScatteringData assemble_scattering(const PotentialField& Q,
                                   const SpectralLayout& layout,
                                   const DiracOptions& opt) {
  ScatteringData out;
  out.layout = layout;
  out.provenance = Provenance::volumetric;
  const int n_ext = layout.n_ext();
  const int m = layout.boundary.m;
  const int n_rec = int(layout.rec_nodes.size());
  out.h12.assign(n_ext, Complex());
  out.h21.assign(n_ext, Complex());
  out.h_bd.assign(std::size_t(m) * m, Mat2::zero());
  out.h12_rec.assign(n_rec, Complex());
  out.h21_rec.assign(n_rec, Complex());

  // One task per spectral node; every task fills only its own slots
  // (exterior node, one boundary column, or recovery node), so the
  // assembly is bit-identical for any worker count.
  parallel_for(std::size_t(n_ext) + m + n_rec, [&](std::size_t t) {
    Complex k;
    if (t < std::size_t(n_ext))
      k = layout.ext_nodes[t];
    else if (t < std::size_t(n_ext) + m)
      k = layout.boundary.node(int(t) - n_ext);
    else
      k = layout.rec_nodes[t - n_ext - m];
    ScatteringSolution sol;
    try {
      sol = solve_mu(Q, k, opt);
    } catch (const std::exception& e) {
      throw std::runtime_error("assemble_scattering: node " + node_label(k) +
                               " is not solvable: " + e.what());
    }
    if (t < std::size_t(n_ext)) {
      const Mat2 h = h_volumetric(sol, k);
      out.h12[t] = h.a12;
      out.h21[t] = h.a21;
    } else if (t < std::size_t(n_ext) + m) {
      const int j = int(t) - n_ext;
      for (int i = 0; i < m; ++i)
        out.bd(i, j) = h_volumetric(sol, layout.boundary.node(i));
    } else {
      const std::size_t r = t - n_ext - m;
      const Mat2 h = h_volumetric(sol, k);
      out.h12_rec[r] = h.a12;
      out.h21_rec[r] = h.a21;
    }
  });
  return out;
}

ScatteringData assemble_scattering(const std::vector<BoundaryTrace>& ext_traces,
                                   const std::vector<BoundaryTrace>& bd_traces,
                                   const SpectralLayout& layout,
                                   const std::vector<BoundaryTrace>& rec_traces) {
  const int n_ext = layout.n_ext();
  const int m = layout.boundary.m;
  if (int(ext_traces.size()) != n_ext || int(bd_traces.size()) != m)
    throw std::invalid_argument(
        "assemble_scattering: trace count does not match the layout");
  const int n_rec = int(rec_traces.size());
  if (n_rec != 0 && n_rec != int(layout.rec_nodes.size()))
    throw std::invalid_argument(
        "assemble_scattering: recovery trace count does not match the layout");
  for (int i = 0; i < n_ext; ++i)
    if (std::abs(ext_traces[i].k - layout.ext_nodes[i]) > 1e-12)
      throw std::invalid_argument(
          "assemble_scattering: exterior trace " + std::to_string(i) +
          " was sampled at the wrong spectral node");
  for (int j = 0; j < m; ++j)
    if (std::abs(bd_traces[j].k - layout.boundary.node(j)) > 1e-12)
      throw std::invalid_argument(
          "assemble_scattering: boundary trace " + std::to_string(j) +
          " was sampled at the wrong spectral node");
  for (int r = 0; r < n_rec; ++r)
    if (std::abs(rec_traces[r].k - layout.rec_nodes[r]) > 1e-12)
      throw std::invalid_argument(
          "assemble_scattering: recovery trace " + std::to_string(r) +
          " was sampled at the wrong spectral node");

  ScatteringData out;
  out.layout = layout;
  out.provenance = Provenance::boundary;
  out.h12.assign(n_ext, Complex());
  out.h21.assign(n_ext, Complex());
  out.h_bd.assign(std::size_t(m) * m, Mat2::zero());
  out.h12_rec.assign(n_rec, Complex());
  out.h21_rec.assign(n_rec, Complex());

  parallel_for(std::size_t(n_ext) + m + n_rec, [&](std::size_t t) {
    if (t < std::size_t(n_ext)) {
      const Mat2 h = h_contour(ext_traces[t], ext_traces[t].k);
      out.h12[t] = h.a12;
      out.h21[t] = h.a21;
    } else if (t < std::size_t(n_ext) + m) {
      const int j = int(t) - n_ext;
      for (int i = 0; i < m; ++i)
        out.bd(i, j) = h_contour(bd_traces[j], layout.boundary.node(i));
    } else {
      const std::size_t r = t - n_ext - m;
      const Mat2 h = h_contour(rec_traces[r], rec_traces[r].k);
      out.h12_rec[r] = h.a12;
      out.h21_rec[r] = h.a21;
    }
  });
  return out;
}

ScatteringData truncate(const ScatteringData& data, double R) {
  ScatteringData out = data;
  for (int t = 0; t < out.layout.n_ext(); ++t)
    if (std::abs(out.layout.ext_nodes[t]) > R) {
      out.h12[t] = Complex();
      out.h21[t] = Complex();
    }
  for (std::size_t r = 0; r < out.h12_rec.size(); ++r)
    if (std::abs(out.layout.rec_nodes[r]) > R) {
      out.h12_rec[r] = Complex();
      out.h21_rec[r] = Complex();
    }
  out.truncation_radius = R;
  return out;
}

}  // namespace dbar
