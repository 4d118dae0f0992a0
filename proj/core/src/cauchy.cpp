#include "dbar/cauchy.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "dbar/fft.hpp"

namespace dbar {
namespace {

// Forward FFT of the punctured Cauchy kernel sampled on the doubled grid,
// cached per (n, h).  Shared read-only across threads after creation.
class KernelCache {
 public:
  const std::vector<Complex>& get(int n, double h) {
    const auto key = std::make_pair(n, h);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return *it->second;
    }
    auto fresh = std::make_unique<std::vector<Complex>>(build(n, h));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = cache_.emplace(key, std::move(fresh));
    (void)inserted;
    return *it->second;
  }

 private:
  static std::vector<Complex> build(int n, double h) {
    const int N = 2 * n;
    std::vector<Complex> ker(std::size_t(N) * N, Complex(0.0, 0.0));
    for (int dj = -n + 1; dj < n; ++dj) {
      const int jj = (dj + N) % N;
      for (int di = -n + 1; di < n; ++di) {
        if (di == 0 && dj == 0) continue;  // punctured: exact cell integral
        const int ii = (di + N) % N;
        const Complex zeta(di * h, dj * h);
        ker[std::size_t(jj) * N + ii] = 1.0 / (kPi * zeta);
      }
    }
    fft2(ker, N, -1);
    return ker;
  }

  std::mutex mu_;
  std::map<std::pair<int, double>, std::unique_ptr<std::vector<Complex>>>
      cache_;
};

KernelCache& kernels() {
  static KernelCache* c = new KernelCache();
  return *c;
}

}  // namespace

ScalarGrid cauchy_solid(const ScalarGrid& f) {
  const int n = f.n;
  const int N = 2 * n;
  const double h = f.spacing();
  const auto& kfft = kernels().get(n, h);

  std::vector<Complex> pad(std::size_t(N) * N, Complex(0.0, 0.0));
  const double h2 = h * h;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      pad[std::size_t(j) * N + i] = f.at(i, j) * h2;

  fft2(pad, N, -1);
  for (std::size_t t = 0; t < pad.size(); ++t) pad[t] *= kfft[t];
  fft2(pad, N, +1);

  ScalarGrid out(f.half_width, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) out.at(i, j) = pad[std::size_t(j) * N + i];
  return out;
}

Complex cauchy_solid_point(const ScalarGrid& f, Complex z) {
  const double h2 = f.spacing() * f.spacing();
  Complex acc(0.0, 0.0);
  for (int j = 0; j < f.n; ++j)
    for (int i = 0; i < f.n; ++i) {
      const Complex fv = f.at(i, j);
      if (fv == Complex(0.0, 0.0)) continue;
      const Complex zeta = z - f.z(i, j);
      if (zeta == Complex(0.0, 0.0)) continue;  // punctured kernel cell
      acc += fv / zeta;
    }
  return acc * (h2 / kPi);
}

ScalarGrid d_inverse(const ScalarGrid& f) {
  ScalarGrid tmp = f;
  for (auto& x : tmp.v) x = std::conj(x);
  ScalarGrid out = cauchy_solid(tmp);
  for (auto& x : out.v) x = std::conj(x);
  return out;
}

ScalarGrid green_convolve(const ScalarGrid& f, Complex k) {
  ScalarGrid src = f;
  // e^{-i conj(k) z / 2} factor on the source
  for (int j = 0; j < src.n; ++j)
    for (int i = 0; i < src.n; ++i) {
      const Complex z = src.z(i, j);
      src.at(i, j) *= std::exp(Complex(0.0, -0.5) * std::conj(k) * z);
    }
  ScalarGrid out = cauchy_solid(src);
  for (int j = 0; j < out.n; ++j)
    for (int i = 0; i < out.n; ++i) {
      const Complex z = out.z(i, j);
      out.at(i, j) *= std::exp(Complex(0.0, 0.5) * std::conj(k) * z);
    }
  return out;
}

ScalarGrid lk_convolve(const ScalarGrid& f, Complex k) {
  ScalarGrid src = f;
  for (int j = 0; j < src.n; ++j)
    for (int i = 0; i < src.n; ++i) {
      const double arg = -std::real(std::conj(k) * src.z(i, j));
      src.at(i, j) *= Complex(std::cos(arg), std::sin(arg));
    }
  return cauchy_solid(src);
}

Complex lk_convolve_point(const ScalarGrid& f, Complex k, Complex z) {
  const double h2 = f.spacing() * f.spacing();
  Complex acc(0.0, 0.0);
  for (int j = 0; j < f.n; ++j)
    for (int i = 0; i < f.n; ++i) {
      const Complex fv = f.at(i, j);
      if (fv == Complex(0.0, 0.0)) continue;
      const Complex zj = f.z(i, j);
      const Complex zeta = z - zj;
      if (zeta == Complex(0.0, 0.0)) continue;
      const double arg = -std::real(std::conj(k) * zj);
      acc += fv * Complex(std::cos(arg), std::sin(arg)) / zeta;
    }
  return acc * (h2 / kPi);
}

}  // namespace dbar
