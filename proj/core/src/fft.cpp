#include "dbar/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace dbar {
namespace {

// Plans are created once per (rank, n, sign) with FFTW_ESTIMATE |
// FFTW_UNALIGNED so they can be executed on any array via
// fftw_execute_dft.  FFTW plan creation is not thread-safe; execution is.
class PlanCache {
 public:
  fftw_plan get(int rank, int n, int sign) {
    const auto key = std::make_tuple(rank, n, sign);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    // A scratch buffer is required at planning time even for ESTIMATE.
    std::vector<Complex> scratch(rank == 2 ? std::size_t(n) * n : n);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    const int dir = (sign < 0) ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = (rank == 2)
                         ? fftw_plan_dft_2d(n, n, p, p, dir,
                                            FFTW_ESTIMATE | FFTW_UNALIGNED)
                         : fftw_plan_dft_1d(n, p, p, dir,
                                            FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    cache_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> cache_;
};

PlanCache& plans() {
  static PlanCache* c = new PlanCache();  // leaked on purpose (exit order)
  return *c;
}

}  // namespace

void fft2(std::vector<Complex>& a, int n, int sign) {
  if (a.size() != std::size_t(n) * n)
    throw std::invalid_argument("fft2: size mismatch");
  fftw_plan plan = plans().get(2, n, sign);
  auto* p = reinterpret_cast<fftw_complex*>(a.data());
  fftw_execute_dft(plan, p, p);
  if (sign > 0) {
    const double scale = 1.0 / (double(n) * double(n));
    for (auto& x : a) x *= scale;
  }
}

void fft1(std::vector<Complex>& a, int sign) {
  const int n = int(a.size());
  fftw_plan plan = plans().get(1, n, sign);
  auto* p = reinterpret_cast<fftw_complex*>(a.data());
  fftw_execute_dft(plan, p, p);
  if (sign > 0) {
    const double scale = 1.0 / double(n);
    for (auto& x : a) x *= scale;
  }
}

std::vector<Complex> dft(const std::vector<Complex>& a) {
  std::vector<Complex> out = a;
  fft1(out, -1);
  return out;
}

std::vector<Complex> idft(const std::vector<Complex>& a) {
  std::vector<Complex> out = a;
  fft1(out, +1);
  return out;
}

}  // namespace dbar
