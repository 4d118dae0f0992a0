#include "dbar/tz.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dbar/circle.hpp"

namespace dbar {

namespace {

Complex& plane(Mat2& m, int p) {
  switch (p) {
    case 0: return m.a11;
    case 1: return m.a12;
    case 2: return m.a21;
    default: return m.a22;
  }
}

Complex plane(const Mat2& m, int p) {
  switch (p) {
    case 0: return m.a11;
    case 1: return m.a12;
    case 2: return m.a21;
    default: return m.a22;
  }
}

Mat2 row_to_mat(const Eigen::MatrixXcd& g, int i) {
  return Mat2{g(i, 0), g(i, 1), g(i, 2), g(i, 3)};
}

Complex unit_phase(double angle) { return std::polar(1.0, angle); }

void check_layouts(const TzOperator& op) {
  const SpectralLayout& a = op.kernels->layout;
  const SpectralLayout& b = op.data->layout;
  if (a.n_ext() != b.n_ext() || a.boundary.m != b.boundary.m ||
      a.A != b.A || a.k0 != b.k0)
    throw std::invalid_argument(
        "tz: kernels and scattering data use different layouts");
}

/// Density of the circle term sampled at the circle nodes for a given
/// interior trace phi_bd: N(b_i) = e^{i b_i conj(z)/2} *
///   sum_j [ K_ij in1_j conj(phi_j) offdiag(bd(j,i))
///         + conj(K_ij) in2_j phi_j conj(diag(bd(j,i))) ].
std::vector<Mat2> circle_density(const TzOperator& op,
                                 const std::vector<Mat2>& phi_bd) {
  const TzKernels& K = *op.kernels;
  const int m = K.layout.boundary.m;
  std::vector<Mat2> c1(m), c2(m);
  for (int j = 0; j < m; ++j) {
    c1[j] = op.in_fac1[j] * conj(phi_bd[j]);
    c2[j] = op.in_fac2[j] * phi_bd[j];
  }
  std::vector<Mat2> density(m);
  for (int i = 0; i < m; ++i) {
    Mat2 acc = Mat2::zero();
    for (int j = 0; j < m; ++j) {
      const Complex kij = K.w_quad(i, j);
      const Mat2& hji = op.data->bd(j, i);
      acc += kij * (c1[j] * hji.offdiag_part());
      acc += std::conj(kij) * (c2[j] * conj(hji.diag_part()));
    }
    density[i] = op.out_phase[i] * acc;
  }
  return density;
}

std::array<std::vector<Complex>, 4> density_modes(
    const std::vector<Mat2>& density) {
  const int m = int(density.size());
  std::array<std::vector<Complex>, 4> modes;
  std::vector<Complex> samples(m);
  for (int p = 0; p < 4; ++p) {
    for (int i = 0; i < m; ++i) samples[i] = plane(density[i], p);
    modes[p] = fourier_coeffs(samples);
  }
  return modes;
}

/// Exterior value of the circle Cauchy integral from the density's
/// Fourier coefficients: -sum_{n<0} c_n (A/k)^{|n|} per entry plane.
Mat2 circle_term_outside(const std::array<std::vector<Complex>, 4>& modes,
                         const SpectralLayout& layout, Complex k) {
  const int m = layout.boundary.m;
  const Complex q = Complex(layout.A, 0.0) / k;
  Mat2 out = Mat2::zero();
  Complex qp = 1.0;
  for (int n = 1; n <= m / 2; ++n) {
    qp *= q;
    const int b = m - n;  // bin of frequency -n (b = m/2 at Nyquist)
    for (int p = 0; p < 4; ++p) plane(out, p) -= modes[p][b] * qp;
  }
  return out;
}

std::size_t field_reals(const SpectralLayout& layout) {
  return (std::size_t(layout.n_ext()) + layout.boundary.m) * 8;
}

void pack_field(const TzField& f, Eigen::VectorXd& x) {
  std::size_t at = 0;
  auto put = [&](const Mat2& m) {
    for (int p = 0; p < 4; ++p) {
      const Complex c = plane(m, p);
      x[at++] = c.real();
      x[at++] = c.imag();
    }
  };
  for (const Mat2& m : f.ext) put(m);
  for (const Mat2& m : f.bd) put(m);
}

TzField unpack_field(const SpectralLayout& layout, const Eigen::VectorXd& x) {
  TzField f = TzField::zero(layout);
  std::size_t at = 0;
  auto get = [&](Mat2& m) {
    for (int p = 0; p < 4; ++p) {
      plane(m, p) = Complex(x[at], x[at + 1]);
      at += 2;
    }
  };
  for (Mat2& m : f.ext) get(m);
  for (Mat2& m : f.bd) get(m);
  return f;
}

/// Annulus sources of a field: f(s_t) = e^{i Re(conj(s_t) z)} conj(phi_t) H_t.
void fill_sources(const TzOperator& op, const std::vector<Mat2>& phi_ext,
                  Eigen::MatrixXcd& sources, std::vector<Mat2>* rows) {
  const int ne = int(phi_ext.size());
  for (int t = 0; t < ne; ++t) {
    const Mat2 f = op.ext_phase[t] * (conj(phi_ext[t]) * op.ext_h[t]);
    if (rows) (*rows)[t] = f;
    sources(t, 0) = f.a11;
    sources(t, 1) = f.a12;
    sources(t, 2) = f.a21;
    sources(t, 3) = f.a22;
  }
}

}  // namespace

Complex w_value(const SpectralLayout& layout, Complex k, Complex s) {
  const double A = layout.A;
  if (std::abs(k) > A * (1.0 + 1e-9))
    throw std::invalid_argument(
        "w_value: first argument must lie in the closed disc |k| <= A");
  if (std::abs(std::abs(s) - A) > 1e-9 * A)
    throw std::invalid_argument(
        "w_value: second argument must lie on the circle |s| = A");
  return std::log(A * A - std::conj(k) * s) -
         std::log(A * A - std::conj(layout.k0) * s);
}

Eigen::MatrixXcd build_w_kernel(const SpectralLayout& layout) {
  const int m = layout.boundary.m;
  const double A = layout.A;
  Eigen::MatrixXcd w(m, m);
  double max_im = 0.0;
  for (int j = 0; j < m; ++j) {
    const Complex s = layout.boundary.node(j);
    const Complex reg = std::log(A * A - std::conj(layout.k0) * s);
    for (int i = 0; i < m; ++i) {
      if (i == j) {
        // Regular part after removing Log(1 - e^{i(theta_j - theta_i)}):
        // Log(A^2 - conj(k_i) s) = 2 Log A + Log(1 - e^{i d theta}).
        w(i, j) = 2.0 * std::log(A) - reg;
      } else {
        w(i, j) =
            std::log(A * A - std::conj(layout.boundary.node(i)) * s) - reg;
        max_im = std::max(max_im, std::abs(w(i, j).imag()));
      }
    }
  }
  if (max_im >= kPi)
    throw std::runtime_error(
        "build_w_kernel: branch bound |Im W| < pi violated; layout rejected");
  return w;
}

std::shared_ptr<const TzKernels> build_tz_kernels(const SpectralLayout& layout) {
  auto kernels = std::make_shared<TzKernels>();
  kernels->layout = layout;
  const int ne = layout.n_ext();
  const int m = layout.boundary.m;

  kernels->ext_cauchy.resize(ne, ne);
  for (int i = 0; i < ne; ++i) {
    const Complex ki = layout.ext_nodes[i];
    for (int j = 0; j < ne; ++j)
      kernels->ext_cauchy(i, j) =
          (i == j) ? Complex()
                   : layout.ext_weights[j] / (layout.ext_nodes[j] - ki);
  }
  kernels->ext_rowsum = kernels->ext_cauchy.rowwise().sum();
  kernels->ext_comp.resize(ne);
  for (int i = 0; i < ne; ++i) {
    const Complex ki = layout.ext_nodes[i];
    kernels->ext_comp(i) = layout.A * layout.A / ki - std::conj(ki);
  }

  kernels->bd_cauchy.resize(m, ne);
  for (int i = 0; i < m; ++i) {
    const Complex bi = layout.boundary.node(i);
    for (int j = 0; j < ne; ++j)
      kernels->bd_cauchy(i, j) =
          layout.ext_weights[j] / (layout.ext_nodes[j] - bi);
  }
  kernels->bd_rowsum = kernels->bd_cauchy.rowwise().sum();

  kernels->w_kernel = build_w_kernel(layout);

  // Exact product rule for the periodic log part: the convolution kernel
  // Log(1 - e^{iu}) integrates e^{inu} to 2 pi / n for n < 0 (including
  // the Nyquist mode) and to zero otherwise.  Its nodal matrix is the
  // circulant synthesized from those integrals divided by m.
  std::vector<Complex> mult(m, Complex());
  for (int b = 0; b < m; ++b) {
    const int n = bin_freq(b, m);
    if (n < 0) mult[b] = Complex(2.0 * kPi / n, 0.0);
  }
  const std::vector<Complex> col = fourier_synthesis(mult);
  kernels->w_quad.resize(m, m);
  const double dtheta = layout.boundary.dtheta();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      kernels->w_quad(i, j) = col[std::size_t((i - j + m) % m)] / double(m) +
                              dtheta * kernels->w_kernel(j, j);
  return kernels;
}

TzField TzField::zero(const SpectralLayout& layout) {
  TzField f;
  f.ext.assign(layout.n_ext(), Mat2::zero());
  f.bd.assign(layout.boundary.m, Mat2::zero());
  return f;
}

TzField TzField::constant(const SpectralLayout& layout, const Mat2& value) {
  TzField f;
  f.ext.assign(layout.n_ext(), value);
  f.bd.assign(layout.boundary.m, value);
  return f;
}

double field_norm(const TzField& f) {
  double s = 0.0;
  for (const Mat2& m : f.ext) s += fnorm(m) * fnorm(m);
  for (const Mat2& m : f.bd) s += fnorm(m) * fnorm(m);
  return std::sqrt(s);
}

TzOperator make_tz(const ScatteringData& data,
                   std::shared_ptr<const TzKernels> kernels, Complex z) {
  if (!kernels) throw std::invalid_argument("make_tz: null kernels");
  TzOperator op;
  op.data = &data;
  op.kernels = std::move(kernels);
  op.z = z;
  check_layouts(op);
  const SpectralLayout& layout = op.kernels->layout;
  const int ne = layout.n_ext();
  const int m = layout.boundary.m;
  if (int(data.h12.size()) != ne || int(data.h21.size()) != ne ||
      int(data.h_bd.size()) != m * m)
    throw std::invalid_argument("make_tz: scattering data size mismatch");

  op.ext_phase.resize(ne);
  op.ext_h.resize(ne);
  for (int t = 0; t < ne; ++t) {
    const Complex k = layout.ext_nodes[t];
    op.ext_phase[t] = unit_phase(std::real(std::conj(k) * z));
    op.ext_h[t] = Mat2{Complex(), data.h12[t], data.h21[t], Complex()};
  }
  op.bd_phase.resize(m);
  op.bd_h.resize(m);
  op.in_fac1.resize(m);
  op.in_fac2.resize(m);
  op.out_phase.resize(m);
  for (int i = 0; i < m; ++i) {
    const Complex b = layout.boundary.node(i);
    op.bd_phase[i] = unit_phase(std::real(std::conj(b) * z));
    op.bd_h[i] = data.bd(i, i).offdiag_part();
    // d(conj s) = -i conj(s) dtheta and ds = i s dtheta on |s| = A.
    op.in_fac1[i] = std::exp(Complex(0.0, 0.5) * std::conj(b) * z) *
                    (Complex(0.0, -1.0) * std::conj(b));
    op.in_fac2[i] = std::exp(Complex(0.0, -0.5) * b * std::conj(z)) *
                    (Complex(0.0, 1.0) * b);
    op.out_phase[i] = std::exp(Complex(0.0, 0.5) * b * std::conj(z));
  }
  return op;
}

TzField apply_tz(const TzOperator& op, const TzField& phi) {
  const TzKernels& kernels = *op.kernels;
  const SpectralLayout& layout = kernels.layout;
  const int ne = layout.n_ext();
  const int m = layout.boundary.m;
  if (int(phi.ext.size()) != ne || int(phi.bd.size()) != m)
    throw std::invalid_argument("apply_tz: field does not match the layout");

  Eigen::MatrixXcd sources(ne, 4);
  std::vector<Mat2> src_rows(ne);
  fill_sources(op, phi.ext, sources, &src_rows);
  const Eigen::MatrixXcd g_ext = kernels.ext_cauchy * sources;
  const Eigen::MatrixXcd g_bd = kernels.bd_cauchy * sources;

  TzField out = TzField::zero(layout);
  const double inv_pi = 1.0 / kPi;
  for (int t = 0; t < ne; ++t) {
    // Singularity subtraction: the quadrature integrates
    // (f(s) - f(k_t)) / (s - k_t), and the subtracted constant is put
    // back with the exact annulus integral of 1/(s - k_t).
    Mat2 v = row_to_mat(g_ext, t);
    v -= src_rows[t] * kernels.ext_rowsum(t);
    v *= inv_pi;
    v += src_rows[t] * kernels.ext_comp(t);
    out.ext[t] = v;
  }
  for (int i = 0; i < m; ++i) {
    // On |k| = A the exact annulus integral of 1/(s - k) vanishes, so
    // only the subtracted quadrature remains.
    const Mat2 fb = op.bd_phase[i] * (conj(phi.bd[i]) * op.bd_h[i]);
    Mat2 v = row_to_mat(g_bd, i);
    v -= fb * kernels.bd_rowsum(i);
    v *= inv_pi;
    out.bd[i] = v;
  }

  const std::vector<Mat2> density = circle_density(op, phi.bd);
  const auto modes = density_modes(density);

  // Interior limit at the circle nodes keeps the analytic-inside part of
  // the density (nonnegative frequencies).
  const int half = m / 2;
  std::vector<Complex> keep(m);
  for (int p = 0; p < 4; ++p) {
    for (int b = 0; b < m; ++b)
      keep[b] = (bin_freq(b, m) >= 0) ? modes[p][b] : Complex();
    const std::vector<Complex> trace = fourier_synthesis(keep);
    for (int i = 0; i < m; ++i) plane(out.bd[i], p) += trace[i];
  }
  // Exterior values come from the analytic-outside part, which decays.
  for (int t = 0; t < ne; ++t) {
    const Complex q = Complex(layout.A, 0.0) / layout.ext_nodes[t];
    Complex qp = 1.0;
    for (int n = 1; n <= half; ++n) {
      qp *= q;
      const int b = m - n;
      for (int p = 0; p < 4; ++p) plane(out.ext[t], p) -= modes[p][b] * qp;
    }
  }
  return out;
}

Mat2 apply_tz_at(const TzOperator& op, const TzField& phi, Complex k) {
  const SpectralLayout& layout = op.kernels->layout;
  if (std::abs(k) <= layout.A)
    throw std::invalid_argument("apply_tz_at: requires |k| > A");
  const int ne = layout.n_ext();
  if (int(phi.ext.size()) != ne || int(phi.bd.size()) != layout.boundary.m)
    throw std::invalid_argument("apply_tz_at: field does not match the layout");

  Mat2 acc = Mat2::zero();
  for (int t = 0; t < ne; ++t) {
    const Mat2 f = op.ext_phase[t] * (conj(phi.ext[t]) * op.ext_h[t]);
    acc += f * (layout.ext_weights[t] / (layout.ext_nodes[t] - k));
  }
  acc *= Complex(1.0 / kPi, 0.0);

  const std::vector<Mat2> density = circle_density(op, phi.bd);
  acc += circle_term_outside(density_modes(density), layout, k);
  return acc;
}

DbarSolution solve_w(const TzOperator& op, const GmresOptions& opt) {
  const SpectralLayout& layout = op.kernels->layout;
  const TzField one = TzField::constant(layout, Mat2::identity());
  const TzField t_one = apply_tz(op, one);

  Eigen::VectorXd b(field_reals(layout));
  pack_field(t_one, b);
  b = -b;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
  Eigen::VectorXd scratch(b.size());
  const LinearOp apply_system = [&op, &layout, &scratch](
                                    const Eigen::VectorXd& in,
                                    Eigen::VectorXd& out) {
    const TzField f = unpack_field(layout, in);
    const TzField tf = apply_tz(op, f);
    pack_field(tf, scratch);
    out = in + scratch;
  };
  const GmresResult r = gmres(apply_system, b, x, opt);

  DbarSolution sol;
  sol.w = unpack_field(layout, x);
  sol.z = op.z;
  sol.residual = r.residual;
  sol.iterations = r.iterations;
  sol.solvable = r.converged;
  return sol;
}

TzEvaluator make_evaluator(const TzOperator& op, const DbarSolution& sol) {
  const SpectralLayout& layout = op.kernels->layout;
  const int ne = layout.n_ext();
  const int m = layout.boundary.m;
  if (int(sol.w.ext.size()) != ne || int(sol.w.bd.size()) != m)
    throw std::invalid_argument(
        "make_evaluator: solution does not match the layout");

  TzEvaluator ev;
  ev.op = &op;
  ev.sol = &sol;
  std::vector<Mat2> full_ext(ne), full_bd(m);
  for (int t = 0; t < ne; ++t) full_ext[t] = sol.w.ext[t] + Mat2::identity();
  for (int i = 0; i < m; ++i) full_bd[i] = sol.w.bd[i] + Mat2::identity();
  ev.sources.resize(ne, 4);
  fill_sources(op, full_ext, ev.sources, nullptr);
  ev.circle_modes = density_modes(circle_density(op, full_bd));
  return ev;
}

Mat2 eval_w(const TzEvaluator& ev, Complex k) {
  const TzOperator& op = *ev.op;
  const SpectralLayout& layout = op.kernels->layout;
  const double node_tol = 1e-9 * std::max(1.0, std::abs(k));
  for (int t = 0; t < layout.n_ext(); ++t)
    if (std::abs(k - layout.ext_nodes[t]) < node_tol) return ev.sol->w.ext[t];
  if (std::abs(k) <= layout.A)
    throw std::invalid_argument("eval_w: requires |k| > A");

  // w(k) = -T_z(w + I)(k), with the annulus singularity subtraction
  // expressed through the (unknown) value f(k) itself; the resulting
  // consistency system in w(k) and conj(w(k)) decouples per column pair
  // and solves in closed form.
  const int ne = layout.n_ext();
  Mat2 s1 = Mat2::zero();
  Complex s_sc = Complex();
  for (int j = 0; j < ne; ++j) {
    const Complex wj = layout.ext_weights[j] / (layout.ext_nodes[j] - k);
    s1 += row_to_mat(ev.sources, j) * wj;
    s_sc += wj;
  }
  const double inv_pi = 1.0 / kPi;
  s1 *= Complex(inv_pi, 0.0);
  const Complex beta =
      (layout.A * layout.A / k - std::conj(k)) - s_sc * inv_pi;
  const Mat2 t2 = circle_term_outside(ev.circle_modes, layout, k);

  const Complex p = unit_phase(std::real(std::conj(k) * op.z));
  const Mat2 h = h_offdiag_at(*op.data, k);
  const Complex bp = beta * p;

  Mat2 rhs = Mat2::zero();
  rhs -= s1;
  rhs -= bp * h;
  rhs -= t2;

  const Complex a = bp * h.a21;  // couples to conj of the first column
  const Complex b = bp * h.a12;  // couples to conj of the second column
  const Complex d1 = 1.0 - b * std::conj(a);
  const Complex d2 = 1.0 - a * std::conj(b);
  if (std::abs(d1) < 1e-12 || std::abs(d2) < 1e-12)
    throw std::runtime_error("eval_w: degenerate evaluation system");
  Mat2 x;
  x.a12 = (rhs.a12 - b * std::conj(rhs.a11)) / d1;
  x.a11 = rhs.a11 - a * std::conj(x.a12);
  x.a21 = (rhs.a21 - a * std::conj(rhs.a22)) / d2;
  x.a22 = rhs.a22 - b * std::conj(x.a21);
  return x;
}

Mat2 recover_psi(const TzEvaluator& ev, Complex k) {
  const Complex z = ev.op->z;
  const Mat2 full = eval_w(ev, k) + Mat2::identity();
  return std::exp(Complex(0.0, 0.5) * std::conj(k) * z) *
             conj(full.diag_part()) +
         std::exp(Complex(0.0, -0.5) * k * std::conj(z)) * full.offdiag_part();
}

Mat2 recover_psi(const TzOperator& op, const DbarSolution& sol, Complex k) {
  return recover_psi(make_evaluator(op, sol), k);
}

Mat2 recover_mu(const TzEvaluator& ev, Complex k) {
  const Complex z = ev.op->z;
  const Mat2 full = eval_w(ev, k) + Mat2::identity();
  return conj(full.diag_part()) +
         unit_phase(-std::real(std::conj(k) * z)) * full.offdiag_part();
}

}  // namespace dbar
