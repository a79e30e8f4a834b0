#include "gcs/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spectral.hpp"

namespace gcs {

namespace {

// Spectral d^order/dx^order of complex samples, in place.
void spectral_derivative(std::span<cplx> values, double dx, int order) {
  const std::size_t n = values.size();
  auto& plan = detail::fft_plan(n);
  auto buf = plan.buffer();
  std::copy(values.begin(), values.end(), buf.begin());
  plan.forward();
  const auto k = detail::wavenumbers(n, dx, order % 2 == 1);
  const cplx i_unit(0.0, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    cplx factor = 1.0 / static_cast<double>(n);
    for (int o = 0; o < order; ++o) factor *= i_unit * k[j];
    buf[j] *= factor;
  }
  plan.backward();
  std::copy(buf.begin(), buf.end(), values.begin());
}

// Finite-difference derivative from the `width` nearest samples around
// each point (centered in the interior, one-sided near the ends).
template <class T>
std::vector<T> stencil_derivative(std::span<const T> f, double dx, int order, int width) {
  const auto n = static_cast<long>(f.size());
  const long half = width / 2;
  std::vector<T> out(f.size());
  std::vector<double> nodes(width);
  std::vector<std::vector<double>> cache(width);
  const double scale = 1.0 / std::pow(dx, order);
  for (long i = 0; i < n; ++i) {
    long start = std::clamp(i - half, 0L, n - width);
    const long offset = i - start;  // position of x_i inside the window
    const bool interior = start == i - half;
    auto& w = interior ? cache[half] : cache[offset];
    if (w.empty() || !interior) {
      for (int j = 0; j < width; ++j) nodes[j] = static_cast<double>(j - offset);
      w = fornberg_weights(0.0, nodes, order)[order];
    }
    T acc{};
    for (int j = 0; j < width; ++j) acc += w[j] * f[start + j];
    out[i] = acc * scale;
  }
  return out;
}

template <class T>
Field<T> derivative(const Field<T>& f, DerivativeMethod method, int order) {
  if (method == DerivativeMethod::Spectral) {
    std::vector<cplx> v(f.begin(), f.end());
    spectral_derivative(v, f.grid().dx(), order);
    if constexpr (std::is_same_v<T, double>) {
      std::vector<double> re(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) re[i] = v[i].real();
      return {f.grid(), std::move(re)};
    } else {
      return {f.grid(), std::move(v)};
    }
  }
  const int width = order == 1 ? 5 : 6;
  if (order == 2) {
    // Interior points use the symmetric 5-point stencil; the 6-point window
    // only matters at the two outermost samples on each side.
    auto out = stencil_derivative<T>(f.values(), f.grid().dx(), 2, width);
    const auto n = f.size();
    const double h2 = f.grid().dx() * f.grid().dx();
    for (std::size_t i = 2; i + 2 < n; ++i) {
      out[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h2);
    }
    return {f.grid(), std::move(out)};
  }
  return {f.grid(), stencil_derivative<T>(f.values(), f.grid().dx(), order, width)};
}

}  // namespace

RealField first_derivative(const RealField& f, DerivativeMethod method) { return derivative(f, method, 1); }
ComplexField first_derivative(const ComplexField& f, DerivativeMethod method) { return derivative(f, method, 1); }
RealField second_derivative(const RealField& f, DerivativeMethod method) { return derivative(f, method, 2); }
ComplexField second_derivative(const ComplexField& f, DerivativeMethod method) { return derivative(f, method, 2); }

double integrate(std::span<const double> v, double dx) {
  const std::size_t n = v.size();
  if (n < 2) return 0.0;
  if (n % 2 == 1) {
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) (i % 2 == 1 ? odd : even) += v[i];
    return dx / 3.0 * (v.front() + v.back() + 4.0 * odd + 2.0 * even);
  }
  double sum = 0.5 * (v.front() + v.back());
  for (std::size_t i = 1; i + 1 < n; ++i) sum += v[i];
  return dx * sum;
}

double integrate(const RealField& f) { return integrate(f.values(), f.grid().dx()); }

double norm(const ComplexField& psi) { return integrate(density(psi)); }

cplx momentum_matrix_element(const ComplexField& psi, double hbar) {
  const auto dpsi = first_derivative(psi, DerivativeMethod::Spectral);
  std::vector<double> re(psi.size());
  std::vector<double> im(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const cplx z = std::conj(psi[i]) * dpsi[i];
    re[i] = z.real();
    im[i] = z.imag();
  }
  const double dx = psi.grid().dx();
  // -i hbar (re + i im) = hbar im - i hbar re
  return {hbar * integrate(im, dx), -hbar * integrate(re, dx)};
}

double expectation(const ComplexField& psi, Moment weight, double hbar, const Tolerances& tol) {
  const double n = norm(psi);
  if (std::abs(n - 1.0) > tol.normalization) {
    fail(ErrorCategory::Precondition, "expectation requires a normalized state, found norm " + std::to_string(n));
  }
  const auto& g = psi.grid();
  std::vector<double> w(psi.size());
  switch (weight) {
    case Moment::X:
    case Moment::X2: {
      const int power = weight == Moment::X ? 1 : 2;
      for (std::size_t i = 0; i < psi.size(); ++i) w[i] = std::pow(g.x(i), power) * std::norm(psi[i]);
      return integrate(w, g.dx());
    }
    case Moment::P:
      return momentum_matrix_element(psi, hbar).real();
    case Moment::P2: {
      const auto dpsi = first_derivative(psi, DerivativeMethod::Spectral);
      for (std::size_t i = 0; i < psi.size(); ++i) w[i] = std::norm(dpsi[i]);
      return hbar * hbar * integrate(w, g.dx());
    }
  }
  return 0.0;
}

double mean_position(const RealField& rho) {
  const auto& g = rho.grid();
  std::vector<double> w(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) w[i] = g.x(i) * rho[i];
  return integrate(w, g.dx()) / integrate(rho);
}

double variance(const RealField& rho) {
  const auto& g = rho.grid();
  const double mu = mean_position(rho);
  std::vector<double> w(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) w[i] = (g.x(i) - mu) * (g.x(i) - mu) * rho[i];
  return integrate(w, g.dx()) / integrate(rho);
}

double boundary_mass(const RealField& rho, int points) {
  const std::size_t n = rho.size();
  const auto p = std::min<std::size_t>(static_cast<std::size_t>(std::max(points, 0)), n / 2);
  double sum = 0.0;
  for (std::size_t i = 0; i < p; ++i) sum += std::abs(rho[i]) + std::abs(rho[n - 1 - i]);
  return sum * rho.grid().dx();
}

double boundary_mass(const ComplexField& psi, int points) { return boundary_mass(density(psi), points); }

std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes, int m) {
  const std::size_t np = nodes.size();
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(np, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < np; ++i) {
    const int mn = std::min<int>(static_cast<int>(i), m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

double local_stencil(const RealField& f, double x, int points, int order) {
  const auto& g = f.grid();
  const auto n = static_cast<long>(g.n());
  if (points < 2 || points > n) fail(ErrorCategory::Precondition, "interpolation stencil does not fit the grid");
  const double s = g.index_of(x);
  if (s < -1e-9 || s > static_cast<double>(n - 1) + 1e-9) {
    fail(ErrorCategory::Precondition, "interpolation point " + std::to_string(x) + " lies outside the grid");
  }
  const long start = std::clamp(static_cast<long>(std::floor(s)) - (points / 2 - 1), 0L, n - points);
  std::vector<double> nodes(points);
  for (int j = 0; j < points; ++j) nodes[j] = static_cast<double>(start + j);
  const auto w = fornberg_weights(s, nodes, order)[order];
  double acc = 0.0;
  for (int j = 0; j < points; ++j) acc += w[j] * f[start + j];
  return acc / std::pow(g.dx(), order);
}

}  // namespace

double interpolate(const RealField& f, double x, int points) { return local_stencil(f, x, points, 0); }

double interpolate_derivative(const RealField& f, double x, int points) { return local_stencil(f, x, points, 1); }

RealField spectral_shift(const RealField& f, double shift) {
  const std::size_t n = f.size();
  auto& plan = detail::fft_plan(n);
  auto buf = plan.buffer();
  std::copy(f.begin(), f.end(), buf.begin());
  plan.forward();
  const auto k = detail::wavenumbers(n, f.grid().dx(), false);
  for (std::size_t j = 0; j < n; ++j) {
    buf[j] *= std::polar(1.0 / static_cast<double>(n), -k[j] * shift);
  }
  if (n % 2 == 0) {
    // The Nyquist mode of a real signal cannot carry a phase; keep its
    // real, symmetric part.
    buf[n / 2] = std::cos(k[n / 2] * shift) * buf[n / 2] / std::polar(1.0, -k[n / 2] * shift);
  }
  plan.backward();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = buf[i].real();
  return {f.grid(), std::move(out)};
}

RealField interpolated_shift(const RealField& f, double shift) {
  const auto& g = f.grid();
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = g.x(i) - shift;
    if (x < g.x_min() || x > g.x_max()) continue;
    out[i] = interpolate(f, x, 6);
  }
  return {g, std::move(out)};
}

}  // namespace gcs
