#include "gcs/grid.hpp"

#include <cmath>
#include <string>

namespace gcs {

std::string_view to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::InvalidField: return "invalid-field";
    case ErrorCategory::Precondition: return "precondition";
    case ErrorCategory::Coverage: return "coverage";
    case ErrorCategory::Escape: return "escape";
    case ErrorCategory::NotImplemented: return "not-implemented";
    case ErrorCategory::Unwrap: return "unwrap";
    case ErrorCategory::Node: return "node";
    case ErrorCategory::Extraction: return "extraction";
    case ErrorCategory::Propagation: return "propagation";
    case ErrorCategory::Unitarity: return "unitarity";
    case ErrorCategory::Diagnostics: return "diagnostics";
    case ErrorCategory::Config: return "config";
  }
  return "unknown";
}

Grid::Grid(double x_min, double x_max, std::size_t n) : x_min_(x_min), x_max_(x_max), n_(n) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    fail(ErrorCategory::Precondition, "grid requires finite x_max > x_min");
  }
  if (n < min_points) {
    fail(ErrorCategory::Precondition,
         "grid requires at least " + std::to_string(min_points) + " points, got " + std::to_string(n));
  }
  dx_ = (x_max - x_min) / static_cast<double>(n - 1);
}

std::vector<double> Grid::coordinates() const {
  std::vector<double> xs(n_);
  for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
  return xs;
}

namespace {

bool finite(double v) { return std::isfinite(v); }
bool finite(const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

template <class T>
Field<T>::Field(Grid grid, std::vector<T> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n()) {
    fail(ErrorCategory::InvalidField, "field has " + std::to_string(values_.size()) +
                                          " samples on a grid of " + std::to_string(grid_.n()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!finite(values_[i])) {
      fail(ErrorCategory::InvalidField,
           "non-finite sample at index " + std::to_string(i) + " (x = " + std::to_string(grid_.x(i)) + ")");
    }
  }
}

template class Field<double>;
template class Field<cplx>;

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) fail(ErrorCategory::InvalidField, std::string(what) + ": fields live on different grids");
}

RealField density(const ComplexField& psi) {
  std::vector<double> rho(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) rho[i] = std::norm(psi[i]);
  return {psi.grid(), std::move(rho)};
}

RealField real_part(const ComplexField& psi) {
  std::vector<double> re(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) re[i] = psi[i].real();
  return {psi.grid(), std::move(re)};
}

ComplexField to_complex(const RealField& f) {
  std::vector<cplx> c(f.begin(), f.end());
  return {f.grid(), std::move(c)};
}

RealField linear_combination(double a, const RealField& f, double b, const RealField& g) {
  require_same_grid(f.grid(), g.grid(), "linear_combination");
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = a * f[i] + b * g[i];
  return {f.grid(), std::move(out)};
}

}  // namespace gcs
