#pragma once

/// \file types.hpp
/// Fundamental value types shared across the library: complex scalars,
/// 2x2 complex matrices, and square node-centered grids over [-s, s)^2.

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace dbar {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// 2x2 complex matrix with value semantics.  Layout:
///   [ a11 a12 ]
///   [ a21 a22 ]
struct Mat2 {
  Complex a11{0.0, 0.0}, a12{0.0, 0.0}, a21{0.0, 0.0}, a22{0.0, 0.0};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 zero() { return {}; }
  /// Diagonal part (off-diagonal entries zeroed).
  Mat2 diag_part() const { return {a11, 0.0, 0.0, a22}; }
  /// Off-diagonal part (diagonal entries zeroed).
  Mat2 offdiag_part() const { return {0.0, a12, a21, 0.0}; }

  Mat2& operator+=(const Mat2& o) {
    a11 += o.a11; a12 += o.a12; a21 += o.a21; a22 += o.a22;
    return *this;
  }
  Mat2& operator-=(const Mat2& o) {
    a11 -= o.a11; a12 -= o.a12; a21 -= o.a21; a22 -= o.a22;
    return *this;
  }
  Mat2& operator*=(Complex s) {
    a11 *= s; a12 *= s; a21 *= s; a22 *= s;
    return *this;
  }
};

inline Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
inline Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
inline Mat2 operator*(Mat2 a, Complex s) { return a *= s; }
inline Mat2 operator*(Complex s, Mat2 a) { return a *= s; }

/// Matrix product.
inline Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

/// Entrywise complex conjugate.
inline Mat2 conj(const Mat2& m) {
  return {std::conj(m.a11), std::conj(m.a12), std::conj(m.a21),
          std::conj(m.a22)};
}

inline Complex det(const Mat2& m) { return m.a11 * m.a22 - m.a12 * m.a21; }

inline Mat2 inverse(const Mat2& m) {
  const Complex d = det(m);
  return {m.a22 / d, -m.a12 / d, -m.a21 / d, m.a11 / d};
}

/// Frobenius norm.
inline double fnorm(const Mat2& m) {
  return std::sqrt(std::norm(m.a11) + std::norm(m.a12) + std::norm(m.a21) +
                   std::norm(m.a22));
}

/// Largest entry magnitude.
inline double max_abs(const Mat2& m) {
  return std::max(std::max(std::abs(m.a11), std::abs(m.a12)),
                  std::max(std::abs(m.a21), std::abs(m.a22)));
}

/// Square uniform grid of complex-plane samples.  Nodes are cell centers:
///   z(i, j) = (-s + i h) + i (-s + j h),  h = 2 s / n,  0 <= i, j < n,
/// so the origin is the node (n/2, n/2) and each node owns the square cell
/// of side h centered on it.  n must be a power of two (FFT-friendly);
/// storage is row-major with the y index slow: v[j * n + i].
template <class T>
struct Grid2D {
  double half_width = 0.0;  ///< s: nodes cover [-s, s - h]
  int n = 0;                ///< nodes per side (power of two)
  std::vector<T> v;

  Grid2D() = default;
  Grid2D(double s, int n_) : half_width(s), n(n_), v(std::size_t(n_) * n_) {
    assert(n_ > 0 && (n_ & (n_ - 1)) == 0);
  }

  double spacing() const { return 2.0 * half_width / n; }
  double coord(int i) const { return -half_width + spacing() * i; }
  Complex z(int i, int j) const { return {coord(i), coord(j)}; }
  std::size_t idx(int i, int j) const { return std::size_t(j) * n + i; }
  T& at(int i, int j) { return v[idx(i, j)]; }
  const T& at(int i, int j) const { return v[idx(i, j)]; }
  std::size_t size() const { return v.size(); }

  /// Sum h^2 * f over all nodes (fixed-order reduction).
  template <class F>
  auto cell_sum(F&& f) const {
    const double h2 = spacing() * spacing();
    decltype(f(v[0]) * h2) acc{};
    for (const auto& x : v) acc += f(x) * h2;
    return acc;
  }
};

using ScalarGrid = Grid2D<Complex>;
using MatrixGrid = Grid2D<Mat2>;

/// Relative L2 distance between two equally shaped sample vectors.
inline double rel_l2(const std::vector<Complex>& a,
                     const std::vector<Complex>& b) {
  assert(a.size() == b.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace dbar
