#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "gcs/errors.hpp"

namespace gcs {

using cplx = std::complex<double>;

/// Uniform 1-D lattice x_i = x_min + i*dx, i = 0..n-1, endpoints included.
class Grid {
 public:
  static constexpr std::size_t min_points = 16;

  Grid(double x_min, double x_max, std::size_t n);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t n() const noexcept { return n_; }
  double dx() const noexcept { return dx_; }
  double length() const noexcept { return x_max_ - x_min_; }
  double x(std::size_t i) const noexcept {
    return i + 1 == n_ ? x_max_ : x_min_ + static_cast<double>(i) * dx_;
  }
  std::vector<double> coordinates() const;

  /// Fractional index of a coordinate (0 at x_min, n-1 at x_max).
  double index_of(double x) const noexcept { return (x - x_min_) / dx_; }

  bool operator==(const Grid&) const = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_;
  double dx_;
};

/// Samples of a function on a Grid. Immutable after construction; all
/// entries are checked to be finite.
template <class T>
class Field {
 public:
  using value_type = T;

  Field(Grid grid, std::vector<T> values);

  template <class F>
  static Field sample(const Grid& grid, F&& f) {
    std::vector<T> v(grid.n());
    for (std::size_t i = 0; i < grid.n(); ++i) v[i] = static_cast<T>(f(grid.x(i)));
    return Field(grid, std::move(v));
  }

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  const T& operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const T> values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

 private:
  Grid grid_;
  std::vector<T> values_;
};

using RealField = Field<double>;
using ComplexField = Field<cplx>;

extern template class Field<double>;
extern template class Field<cplx>;

/// Throws InvalidField unless both fields live on the same grid.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

RealField density(const ComplexField& psi);
RealField real_part(const ComplexField& psi);
ComplexField to_complex(const RealField& f);
RealField linear_combination(double a, const RealField& f, double b, const RealField& g);

}  // namespace gcs
