#include "spectral.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace gcs::detail {

namespace {
std::mutex planner_mutex;
}

FftPlan::FftPlan(std::size_t n) : n_(n) {
  data_ = fftw_alloc_complex(n);
  std::lock_guard lock(planner_mutex);
  forward_ = fftw_plan_dft_1d(static_cast<int>(n), data_, data_, FFTW_FORWARD, FFTW_ESTIMATE);
  backward_ = fftw_plan_dft_1d(static_cast<int>(n), data_, data_, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex);
  fftw_destroy_plan(forward_);
  fftw_destroy_plan(backward_);
  fftw_free(data_);
}

FftPlan& fft_plan(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<FftPlan>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FftPlan>(n);
  return *slot;
}

std::vector<double> wavenumbers(std::size_t n, double dx, bool odd) {
  std::vector<double> k(n);
  const double k0 = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
  for (std::size_t j = 0; j < n; ++j) {
    const auto signed_j = j <= n / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
    k[j] = k0 * signed_j;
  }
  if (odd && n % 2 == 0) k[n / 2] = 0.0;
  return k;
}

}  // namespace gcs::detail
