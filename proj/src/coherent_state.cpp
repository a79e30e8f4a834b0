#include "gcs/coherent_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gcs/calculus.hpp"

namespace gcs {

void require_finite(const ClassicalPoint& point) {
  if (!std::isfinite(point.Q) || !std::isfinite(point.P) || !std::isfinite(point.t)) {
    fail(ErrorCategory::Precondition, "classical point (Q, P, t) must be finite");
  }
}

namespace {

// Coordinates holding all but `tail` of the mass on either side.
std::pair<double, double> support(const RealField& rho, double tail) {
  const auto& g = rho.grid();
  const double total = integrate(rho);
  double acc = 0.0;
  std::size_t lo = 0;
  while (lo + 1 < rho.size() && (acc + rho[lo] * g.dx()) <= tail * total) acc += rho[lo++] * g.dx();
  acc = 0.0;
  std::size_t hi = rho.size() - 1;
  while (hi > lo && (acc + rho[hi] * g.dx()) <= tail * total) acc += rho[hi--] * g.dx();
  return {g.x(lo), g.x(hi)};
}

}  // namespace

RealField translate(const RealField& psi0, double shift, const Tolerances& tol, TranslationMethod* used) {
  const auto& g = psi0.grid();
  if (shift == 0.0) {
    if (used) *used = TranslationMethod::Identity;
    return psi0;
  }
  std::vector<double> rho_v(psi0.size());
  for (std::size_t i = 0; i < psi0.size(); ++i) rho_v[i] = psi0[i] * psi0[i];
  const RealField rho(g, std::move(rho_v));

  const auto [lo, hi] = support(rho, tol.boundary_mass);
  const double margin = tol.boundary_points * g.dx();
  if (lo + shift < g.x_min() + margin || hi + shift > g.x_max() - margin) {
    std::ostringstream os;
    os << "translation by " << shift << " moves the support [" << lo << ", " << hi << "] outside the grid ["
       << g.x_min() << ", " << g.x_max() << "]";
    fail(ErrorCategory::Coverage, os.str());
  }

  const bool decayed = boundary_mass(rho, tol.boundary_points) <= tol.boundary_mass;
  auto shifted = decayed ? spectral_shift(psi0, shift) : interpolated_shift(psi0, shift);
  if (used) *used = decayed ? TranslationMethod::Spectral : TranslationMethod::Quintic;

  std::vector<double> out_rho(shifted.size());
  for (std::size_t i = 0; i < shifted.size(); ++i) out_rho[i] = shifted[i] * shifted[i];
  const double edge = boundary_mass(RealField(g, std::move(out_rho)), tol.boundary_points);
  if (edge > tol.boundary_mass) {
    std::ostringstream os;
    os << "translated packet touches the grid boundary (boundary mass " << edge << ")";
    fail(ErrorCategory::Coverage, os.str());
  }
  return shifted;
}

ComplexField displace(const RealField& psi0, const ClassicalPoint& point, double hbar, const Tolerances& tol,
                      TranslationMethod* used) {
  require_finite(point);
  const auto shifted = translate(psi0, point.Q, tol, used);
  const auto& g = psi0.grid();
  const cplx global = std::polar(1.0, -point.P * point.Q / (2.0 * hbar));
  std::vector<cplx> psi(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) {
    psi[i] = global * std::polar(1.0, point.P * g.x(i) / hbar) * shifted[i];
  }
  return {g, std::move(psi)};
}

GCSState make_coherent_state(const PotentialModel& model, const Grid& grid, const ClassicalPoint& point,
                             const Tolerances& tol) {
  const auto psi0 = ground_state(model, grid, tol);
  TranslationMethod used = TranslationMethod::Identity;
  auto psi = displace(psi0, point, model.hbar(), tol, &used);
  return {std::move(psi), point, model, used};
}

DensityPhase density_phase(const ComplexField& psi, double hbar, const Tolerances& tol) {
  const auto& g = psi.grid();
  const std::size_t n = g.n();
  auto rho = density(psi);
  const auto peak_it = std::max_element(rho.begin(), rho.end());
  const std::size_t anchor = static_cast<std::size_t>(peak_it - rho.begin());
  const double floor = tol.phase_floor * *peak_it;
  if (!(*peak_it > 0.0)) fail(ErrorCategory::Unwrap, "phase undefined for a vanishing wavefunction");

  std::vector<double> S(n, 0.0);
  std::vector<bool> extrapolated(n, true);
  S[anchor] = hbar * std::arg(psi[anchor]);
  extrapolated[anchor] = false;

  auto unwrap = [&](long from, long step) {
    long last = from;
    for (long i = from + step; i >= 0 && i < static_cast<long>(n); i += step) {
      if (!(rho[i] > floor)) break;
      const double delta = std::arg(psi[i] * std::conj(psi[last]));
      if (std::abs(delta) > tol.max_phase_increment) {
        std::ostringstream os;
        os << "phase jump of " << delta << " rad between x = " << g.x(last) << " and x = " << g.x(i);
        fail(ErrorCategory::Unwrap, os.str());
      }
      S[i] = S[last] + hbar * delta;
      extrapolated[i] = false;
      last = i;
    }
    // Linear continuation from the last two trusted samples.
    const long prev = last - step;
    const double slope = (prev >= 0 && prev < static_cast<long>(n) && !extrapolated[prev])
                             ? (S[last] - S[prev]) / static_cast<double>(step)
                             : 0.0;
    for (long i = last + step; i >= 0 && i < static_cast<long>(n); i += step) {
      S[i] = S[last] + slope * static_cast<double>(i - last);
    }
  };
  unwrap(static_cast<long>(anchor), +1);
  unwrap(static_cast<long>(anchor), -1);

  return {std::move(rho), RealField(g, std::move(S)), std::move(extrapolated), anchor};
}

std::complex<double> alpha_label(const ClassicalPoint& point, double hbar) {
  return std::sqrt(2.0 * hbar) * std::complex<double>(point.Q, point.P);
}

}  // namespace gcs
