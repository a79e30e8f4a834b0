#include "gcs/madelung.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gcs/calculus.hpp"

namespace gcs {

namespace {

double l2_norm(std::span<const double> v, double dx) {
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) sq[i] = v[i] * v[i];
  return std::sqrt(integrate(sq, dx));
}

}  // namespace

Curvature quantum_curvature(const RealField& rho, const Tolerances& tol) {
  const auto& g = rho.grid();
  const std::size_t n = g.n();
  for (std::size_t i = 0; i < n; ++i) {
    if (rho[i] < 0.0) fail(ErrorCategory::InvalidField, "density is negative at x = " + std::to_string(g.x(i)));
  }
  const double mass = integrate(rho);
  if (std::abs(mass - 1.0) > tol.normalization) {
    fail(ErrorCategory::Precondition, "quantum curvature requires a normalized density, found " + std::to_string(mass));
  }
  const double peak = *std::max_element(rho.begin(), rho.end());
  const double floor = tol.curvature_floor * peak;

  std::size_t begin = 0;
  while (begin < n && !(rho[begin] > floor)) ++begin;
  std::size_t end = n;
  while (end > begin && !(rho[end - 1] > floor)) --end;
  for (std::size_t i = begin; i < end; ++i) {
    if (!(rho[i] > floor)) {
      std::ostringstream os;
      os << "density has a node near x = " << g.x(i) << "; coherent-state densities are nodeless";
      fail(ErrorCategory::Node, os.str());
    }
  }

  std::vector<double> amp(n);
  for (std::size_t i = 0; i < n; ++i) amp[i] = std::sqrt(rho[i]);
  const auto d2 = second_derivative(RealField(g, amp), DerivativeMethod::Spectral);

  std::vector<double> F(n);
  for (std::size_t i = begin; i < end; ++i) F[i] = d2[i] / amp[i];
  for (std::size_t i = 0; i < begin; ++i) F[i] = F[begin];
  for (std::size_t i = end; i < n; ++i) F[i] = F[end - 1];
  return {RealField(g, std::move(F)), begin, end};
}

PotentialSnapshot assemble_potential(const PotentialModel& model, const Grid& grid, const ClassicalPoint& point,
                                     double dPdt, CurvatureRoute route, const Tolerances& tol) {
  require_finite(point);
  if (!std::isfinite(dPdt)) fail(ErrorCategory::Precondition, "dP/dt must be finite");
  const double m = model.mass();
  const double dQdt = point.P / m;
  const double offset = -point.P * point.P / (2.0 * m) + 0.5 * (dQdt * point.P + dPdt * point.Q);

  std::vector<double> V(grid.n());
  if (route == CurvatureRoute::Analytic) {
    // Coverage is judged on the translated ground state the potential belongs to.
    (void)shifted_ground_state(model, grid, point.Q, tol);
    for (std::size_t i = 0; i < grid.n(); ++i) {
      const double x = grid.x(i);
      V[i] = curvature_potential(model, x - point.Q) - dPdt * x + offset;
    }
  } else {
    const auto shifted = translate(ground_state(model, grid, tol), point.Q, tol);
    const auto rho = density(to_complex(shifted));
    const auto curvature = quantum_curvature(rho, tol);
    const double c = model.hbar() * model.hbar() / (2.0 * m);
    for (std::size_t i = 0; i < grid.n(); ++i) {
      V[i] = c * curvature.F[i] - dPdt * grid.x(i) + offset;
    }
  }
  return {RealField(grid, std::move(V)), point, dPdt, dQdt};
}

double continuity_residual(const RealField& rho_t, const RealField& rho, const RealField& S, double mass) {
  require_same_grid(rho_t.grid(), rho.grid(), "continuity_residual");
  require_same_grid(rho.grid(), S.grid(), "continuity_residual");
  const auto& g = rho.grid();
  const auto Sx = first_derivative(S, DerivativeMethod::Central5);
  std::vector<double> flux(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) flux[i] = rho[i] * Sx[i];
  const auto div = first_derivative(RealField(g, std::move(flux)), DerivativeMethod::Spectral);
  std::vector<double> r(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) r[i] = rho_t[i] + div[i] / mass;
  const double scale = l2_norm(rho_t.values(), g.dx());
  const double res = l2_norm(r, g.dx());
  return scale > 0.0 ? res / scale : res;
}

double hjm_residual(const RealField& S_t, const RealField& S, const RealField& rho, const RealField& V,
                    double mass, double hbar, const Tolerances& tol) {
  require_same_grid(S_t.grid(), S.grid(), "hjm_residual");
  require_same_grid(S.grid(), rho.grid(), "hjm_residual");
  require_same_grid(rho.grid(), V.grid(), "hjm_residual");
  const auto& g = rho.grid();
  const auto curvature = quantum_curvature(rho, tol);
  const auto Sx = first_derivative(S, DerivativeMethod::Central5);
  const double c = hbar * hbar / (2.0 * mass);

  std::vector<double> num(g.n(), 0.0);
  std::vector<double> den(g.n(), 0.0);
  for (std::size_t i = curvature.valid_begin; i < curvature.valid_end; ++i) {
    const double r = S_t[i] + Sx[i] * Sx[i] / (2.0 * mass) - c * curvature.F[i] + V[i];
    num[i] = rho[i] * r * r;
    den[i] = rho[i] * V[i] * V[i];
  }
  const double res = std::sqrt(integrate(num, g.dx()));
  const double scale = std::sqrt(integrate(den, g.dx()));
  return scale > 0.0 ? res / scale : res;
}

RealField phase_rate(const ComplexField& before, const ComplexField& after, double dt, double hbar) {
  require_same_grid(before.grid(), after.grid(), "phase_rate");
  std::vector<double> rate(before.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    rate[i] = hbar * std::arg(after[i] * std::conj(before[i])) / dt;
  }
  return {before.grid(), std::move(rate)};
}

}  // namespace gcs
