#pragma once

#include <fftw3.h>

#include <cstddef>
#include <span>
#include <vector>

#include "gcs/grid.hpp"

namespace gcs::detail {

/// Forward/backward complex FFT pair of one size with its own aligned
/// buffer. Planning goes through a global lock; execution is lock-free.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const noexcept { return n_; }
  std::span<cplx> buffer() noexcept { return {reinterpret_cast<cplx*>(data_), n_}; }

  /// In place on buffer(); backward() does not rescale.
  void forward() { fftw_execute(forward_); }
  void backward() { fftw_execute(backward_); }

 private:
  std::size_t n_;
  fftw_complex* data_;
  fftw_plan forward_;
  fftw_plan backward_;
};

/// Per-thread plan cache keyed by size.
FftPlan& fft_plan(std::size_t n);

/// Angular wavenumbers of the periodic embedding with period n*dx.
/// The Nyquist entry is zeroed when `odd` is set (odd-order derivatives).
std::vector<double> wavenumbers(std::size_t n, double dx, bool odd);

}  // namespace gcs::detail
