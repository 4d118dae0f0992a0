#include "dbar/lippmann.hpp"

#include <cmath>
#include <stdexcept>

#include "dbar/cauchy.hpp"
#include "dbar/grid.hpp"

namespace dbar {
namespace {

// Shared machinery for the two column-pair solves.  The unknown is the
// pair (uA, uB) on the support nodes, coupled by
//   uA = rhsA + C[phase QA conj(uB)],   uB = rhsB + C[phase QB conj(uA)],
// where C is the solid Cauchy transform and phase = e^{-i Re(conj(kp) z)}.
struct PairSystem {
  const ScalarGrid* QA;
  const ScalarGrid* QB;
  std::vector<std::uint32_t> support;
  std::vector<Complex> phase;  // phase at support nodes
  double half_width;
  int n;

  // Scratch grids reused across GMRES applies.
  mutable ScalarGrid srcA, srcB;

  PairSystem(const ScalarGrid& qa, const ScalarGrid& qb,
             const std::vector<std::uint32_t>& supp, Complex kp)
      : QA(&qa), QB(&qb), support(supp), half_width(qa.half_width), n(qa.n),
        srcA(qa.half_width, qa.n), srcB(qa.half_width, qa.n) {
    phase.resize(support.size());
    for (std::size_t s = 0; s < support.size(); ++s) {
      const std::uint32_t t = support[s];
      const Complex z = qa.z(int(t % n), int(t / n));
      const double arg = -std::real(std::conj(kp) * z);
      phase[s] = Complex(std::cos(arg), std::sin(arg));
    }
  }

  std::size_t dim() const { return 4 * support.size(); }

  // x layout: [Re uA, Im uA, Re uB, Im uB] per support node, interleaved
  // as (node-major, component-major blocks): first 2*Ns reals for uA.
  void unpack(const Eigen::VectorXd& x, std::vector<Complex>& uA,
              std::vector<Complex>& uB) const {
    const std::size_t Ns = support.size();
    uA.resize(Ns);
    uB.resize(Ns);
    for (std::size_t s = 0; s < Ns; ++s) {
      uA[s] = Complex(x(2 * s), x(2 * s + 1));
      uB[s] = Complex(x(2 * (Ns + s)), x(2 * (Ns + s) + 1));
    }
  }

  void pack(const std::vector<Complex>& uA, const std::vector<Complex>& uB,
            Eigen::VectorXd& x) const {
    const std::size_t Ns = support.size();
    x.resize(dim());
    for (std::size_t s = 0; s < Ns; ++s) {
      x(2 * s) = uA[s].real();
      x(2 * s + 1) = uA[s].imag();
      x(2 * (Ns + s)) = uB[s].real();
      x(2 * (Ns + s) + 1) = uB[s].imag();
    }
  }

  // Fill the source grids from support values of the conjugated partners.
  void fill_sources(const std::vector<Complex>& uA,
                    const std::vector<Complex>& uB) const {
    std::fill(srcA.v.begin(), srcA.v.end(), Complex(0.0, 0.0));
    std::fill(srcB.v.begin(), srcB.v.end(), Complex(0.0, 0.0));
    for (std::size_t s = 0; s < support.size(); ++s) {
      const std::uint32_t t = support[s];
      srcA.v[t] = phase[s] * QA->v[t] * std::conj(uB[s]);
      srcB.v[t] = phase[s] * QB->v[t] * std::conj(uA[s]);
    }
  }

  // y = x - T x restricted to the support.
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    std::vector<Complex> uA, uB;
    unpack(x, uA, uB);
    fill_sources(uA, uB);
    const ScalarGrid cA = cauchy_solid(srcA);
    const ScalarGrid cB = cauchy_solid(srcB);
    std::vector<Complex> outA(uA.size()), outB(uB.size());
    for (std::size_t s = 0; s < support.size(); ++s) {
      const std::uint32_t t = support[s];
      outA[s] = uA[s] - cA.v[t];
      outB[s] = uB[s] - cB.v[t];
    }
    pack(outA, outB, y);
  }
};

}  // namespace

Mat2 ScatteringSolution::eval_mu(Complex z) const {
  const double h2 = s1a.spacing() * s1a.spacing();
  // Puncture radius: rounding of the node coordinates themselves must not
  // turn the cell-centered principal value into a 1/eps spike.
  const double punct2 = 1e-18 * h2;
  Mat2 acc = Mat2::zero();
  const int n = s1a.n;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const std::size_t t = s1a.idx(i, j);
      const Complex a1 = s1a.v[t], b1 = s1b.v[t];
      const Complex a2 = s2a.v[t], b2 = s2b.v[t];
      if (a1 == Complex() && b1 == Complex() && a2 == Complex() &&
          b2 == Complex())
        continue;
      const Complex zeta = z - s1a.z(i, j);
      if (std::norm(zeta) < punct2) continue;  // punctured kernel
      const Complex ker = 1.0 / (kPi * zeta);
      acc.a11 += ker * a1;
      acc.a21 += ker * b1;
      acc.a12 += ker * a2;
      acc.a22 += ker * b2;
    }
  acc *= h2;

  if (kind == Kind::standard) {
    acc.a11 += 1.0;
    acc.a22 += 1.0;
    return acc;
  }
  // Anchored: u(z) = Phi(z) I + sum; mu = u * e^{i (conj(k0) - conj(k)) z/2}
  const Complex phi = std::exp(Complex(0.0, 0.5) * (std::conj(k) -
                                                    std::conj(k0)) * z);
  acc.a11 += phi;
  acc.a22 += phi;
  const Complex back =
      std::exp(Complex(0.0, 0.5) * (std::conj(k0) - std::conj(k)) * z);
  acc *= back;
  return acc;
}

Mat2 ScatteringSolution::eval_psi(Complex z) const {
  Mat2 m = eval_mu(z);
  m *= std::exp(Complex(0.0, 0.5) * std::conj(k) * z);
  return m;
}

namespace {

ScatteringSolution solve_impl(const PotentialField& Q, Complex k,
                              ScatteringSolution::Kind kind, Complex k0,
                              const DiracOptions& opt) {
  ScatteringSolution sol;
  sol.k = k;
  sol.kind = kind;
  sol.k0 = k0;
  const auto& q12 = Q.Q12;
  const int n = q12.n;
  const double hw = q12.half_width;

  sol.mu11 = ScalarGrid(hw, n);
  sol.mu12 = ScalarGrid(hw, n);
  sol.mu21 = ScalarGrid(hw, n);
  sol.mu22 = ScalarGrid(hw, n);
  sol.s1a = ScalarGrid(hw, n);
  sol.s1b = ScalarGrid(hw, n);
  sol.s2a = ScalarGrid(hw, n);
  sol.s2b = ScalarGrid(hw, n);

  const bool anchored = (kind == ScatteringSolution::Kind::anchored);
  const Complex kp = anchored ? k0 : k;

  // Incident term on the grid: 1 for standard, Phi for anchored.
  ScalarGrid incident(hw, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      incident.at(i, j) =
          anchored ? std::exp(Complex(0.0, 0.5) *
                              (std::conj(k) - std::conj(k0)) *
                              incident.z(i, j))
                   : Complex(1.0, 0.0);

  std::vector<std::uint32_t> support = disc_indices(q12, Q.support_radius);
  if (Q.max_abs() == 0.0) support.clear();  // free problem: no unknowns

  auto finalize_pair = [&](const std::vector<Complex>& uDiag,
                           const std::vector<Complex>& uOff, bool first) {
    // Fill sources from converged support values, then evaluate the pair
    // on the full grid.  Pair 1: diag = u11, off = u21 (sources s1a from
    // conj(u21), s1b from conj(u11)); pair 2: diag = u22, off = u12.
    ScalarGrid& sa = first ? sol.s1a : sol.s2a;
    ScalarGrid& sb = first ? sol.s1b : sol.s2b;
    for (std::size_t s = 0; s < support.size(); ++s) {
      const std::uint32_t t = support[s];
      const Complex z = q12.z(int(t % n), int(t / n));
      const double arg = -std::real(std::conj(kp) * z);
      const Complex ph(std::cos(arg), std::sin(arg));
      sa.v[t] = ph * Q.Q12.v[t] * std::conj(first ? uOff[s] : uDiag[s]);
      sb.v[t] = ph * Q.Q21.v[t] * std::conj(first ? uDiag[s] : uOff[s]);
    }
    const ScalarGrid cA = cauchy_solid(sa);
    const ScalarGrid cB = cauchy_solid(sb);
    ScalarGrid& mDiag = first ? sol.mu11 : sol.mu22;
    ScalarGrid& mOff = first ? sol.mu21 : sol.mu12;
    const ScalarGrid& cDiag = first ? cA : cB;
    const ScalarGrid& cOff = first ? cB : cA;
    for (std::size_t t = 0; t < mDiag.v.size(); ++t) {
      mDiag.v[t] = incident.v[t] + cDiag.v[t];
      mOff.v[t] = cOff.v[t];
    }
  };

  if (support.empty()) {
    // Free problem: mu = incident on the diagonal (anchored converts back
    // to exactly 1 as well).
    std::vector<Complex> empty;
    finalize_pair(empty, empty, true);
    finalize_pair(empty, empty, false);
  } else {
    GmresOptions gopt;
    gopt.tol = opt.tol;
    gopt.max_iters = opt.max_iters;
    gopt.restart = opt.restart;

    // Pair 1: (uA, uB) = (u11, u21): uA = inc + C[ph Q12 conj(uB)],
    // uB = C[ph Q21 conj(uA)].
    {
      PairSystem sys(Q.Q12, Q.Q21, support, kp);
      std::vector<Complex> rA(support.size()), rB(support.size(),
                                                  Complex(0.0, 0.0));
      for (std::size_t s = 0; s < support.size(); ++s)
        rA[s] = incident.v[support[s]];
      Eigen::VectorXd b, x;
      sys.pack(rA, rB, b);
      auto res = gmres([&sys](const Eigen::VectorXd& in,
                              Eigen::VectorXd& out) { sys.apply(in, out); },
                       b, x, gopt);
      if (!res.converged)
        throw std::runtime_error("solve_mu: pair-1 GMRES stalled (residual " +
                                 std::to_string(res.residual) + ")");
      std::vector<Complex> uA, uB;
      sys.unpack(x, uA, uB);
      finalize_pair(uA, uB, true);
      sol.residual = std::max(sol.residual, res.residual);
      sol.iterations += res.iterations;
    }
    // Pair 2: (uA, uB) = (u22, u12): uA = inc + C[ph Q21 conj(uB)],
    // uB = C[ph Q12 conj(uA)].
    {
      PairSystem sys(Q.Q21, Q.Q12, support, kp);
      std::vector<Complex> rA(support.size()), rB(support.size(),
                                                  Complex(0.0, 0.0));
      for (std::size_t s = 0; s < support.size(); ++s)
        rA[s] = incident.v[support[s]];
      Eigen::VectorXd b, x;
      sys.pack(rA, rB, b);
      auto res = gmres([&sys](const Eigen::VectorXd& in,
                              Eigen::VectorXd& out) { sys.apply(in, out); },
                       b, x, gopt);
      if (!res.converged)
        throw std::runtime_error("solve_mu: pair-2 GMRES stalled (residual " +
                                 std::to_string(res.residual) + ")");
      std::vector<Complex> uA, uB;
      sys.unpack(x, uA, uB);
      finalize_pair(uA, uB, false);  // diag = u22 = uA, off = u12 = uB
      sol.residual = std::max(sol.residual, res.residual);
      sol.iterations += res.iterations;
    }
  }

  if (anchored) {
    // Convert the anchored auxiliary to mu: mu = u e^{i(conj(k0)-conj(k))z/2}.
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const Complex back = std::exp(
            Complex(0.0, 0.5) * (std::conj(k0) - std::conj(k)) *
            sol.mu11.z(i, j));
        const std::size_t t = sol.mu11.idx(i, j);
        sol.mu11.v[t] *= back;
        sol.mu12.v[t] *= back;
        sol.mu21.v[t] *= back;
        sol.mu22.v[t] *= back;
      }
  }
  return sol;
}

}  // namespace

ScatteringSolution solve_mu(const PotentialField& Q, Complex k,
                            const DiracOptions& opt) {
  return solve_impl(Q, k, ScatteringSolution::Kind::standard,
                    Complex(0.0, 0.0), opt);
}

ScatteringSolution solve_mu_plus(const PotentialField& Q, Complex k,
                                 Complex k0, const DiracOptions& opt) {
  return solve_impl(Q, k, ScatteringSolution::Kind::anchored, k0, opt);
}

Mat2Field build_v(const ScatteringSolution& sol) {
  Mat2Field v;
  v.a11 = sol.mu11;
  v.a12 = sol.mu12;
  v.a21 = sol.mu21;
  v.a22 = sol.mu22;
  const int n = v.a11.n;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Complex z = v.a11.z(i, j);
      const double arg = std::real(std::conj(sol.k) * z);
      const Complex ph(std::cos(arg), std::sin(arg));
      const std::size_t t = v.a11.idx(i, j);
      v.a11.v[t] = std::conj(v.a11.v[t]);
      v.a22.v[t] = std::conj(v.a22.v[t]);
      v.a12.v[t] *= ph;
      v.a21.v[t] *= ph;
    }
  return v;
}

Mat2 eval_v(const ScatteringSolution& sol, Complex z) {
  const Mat2 mu = sol.eval_mu(z);
  const double arg = std::real(std::conj(sol.k) * z);
  const Complex ph(std::cos(arg), std::sin(arg));
  return {std::conj(mu.a11), mu.a12 * ph, mu.a21 * ph, std::conj(mu.a22)};
}

}  // namespace dbar
