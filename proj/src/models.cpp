#include "gcs/models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "gcs/calculus.hpp"

namespace gcs {

namespace {

// gamma = pi / (2 sqrt 6); the Morse (lambda = 1) ground state has spread 2 gamma / a.
constexpr double morse_gamma = std::numbers::pi / (2.0 * 2.449489742783178098197284);

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    fail(ErrorCategory::Precondition, std::string(what) + " must be positive and finite");
  }
}

}  // namespace

PotentialModel PotentialModel::harmonic(double omega, double mass, double hbar) {
  require_positive(omega, "omega");
  require_positive(mass, "mass");
  require_positive(hbar, "hbar");
  PotentialModel m;
  m.kind_ = ModelKind::Harmonic;
  m.omega_ = omega;
  m.mass_ = mass;
  m.hbar_ = hbar;
  return m;
}

PotentialModel PotentialModel::morse(double a, double lambda, double mass, double hbar) {
  require_positive(a, "a");
  require_positive(mass, "mass");
  require_positive(hbar, "hbar");
  if (!(lambda > 0.5)) fail(ErrorCategory::Precondition, "Morse lambda must exceed 1/2 for a bound state");
  if (lambda != 1.0) {
    fail(ErrorCategory::NotImplemented, "closed-form Morse ground state is only available for lambda = 1");
  }
  PotentialModel m;
  m.kind_ = ModelKind::Morse;
  m.a_ = a;
  m.lambda_ = lambda;
  m.mass_ = mass;
  m.hbar_ = hbar;
  return m;
}

double PotentialModel::energy_unit() const noexcept {
  return kind_ == ModelKind::Morse ? (hbar_ * a_) * (hbar_ * a_) / (2.0 * mass_) : 0.0;
}

double PotentialModel::energy_scale() const noexcept {
  return kind_ == ModelKind::Morse ? well_depth() : hbar_ * omega_;
}

double PotentialModel::force_scale() const noexcept { return energy_scale() / ground_spread(*this); }

std::string PotentialModel::name() const {
  std::ostringstream os;
  if (kind_ == ModelKind::Morse) {
    os << "morse(a=" << a_ << ", lambda=" << lambda_;
  } else {
    os << "harmonic(omega=" << omega_;
  }
  os << ", m=" << mass_ << ", hbar=" << hbar_ << ")";
  return os.str();
}

double potential_value(const PotentialModel& model, double x) {
  if (model.kind() == ModelKind::Harmonic) {
    return 0.5 * model.mass() * model.omega() * model.omega() * x * x;
  }
  const double s = 1.0 - std::exp(-model.range() * x);
  return model.well_depth() * s * s;
}

double potential_gradient(const PotentialModel& model, double x) {
  if (model.kind() == ModelKind::Harmonic) return model.mass() * model.omega() * model.omega() * x;
  const double a = model.range();
  const double e = std::exp(-a * x);
  return 2.0 * a * model.well_depth() * (1.0 - e) * e;
}

double ground_energy(const PotentialModel& model) {
  if (model.kind() == ModelKind::Harmonic) return 0.5 * model.hbar() * model.omega();
  const double l = model.lambda();
  return model.energy_unit() * (l * l - (l - 0.5) * (l - 0.5));
}

double ground_spread(const PotentialModel& model) {
  if (model.kind() == ModelKind::Harmonic) return std::sqrt(model.hbar() / (2.0 * model.mass() * model.omega()));
  return 2.0 * morse_gamma / model.range();
}

namespace {

// Psi_0 with its normalization constant evaluated once.
struct Amplitude {
  explicit Amplitude(const PotentialModel& model) : harmonic(model.kind() == ModelKind::Harmonic) {
    if (harmonic) {
      const double mw = model.mass() * model.omega();
      scale = mw / (2.0 * model.hbar());
      prefactor = std::pow(mw / (std::numbers::pi * model.hbar()), 0.25);
    } else {
      const double dq = ground_spread(model);
      scale = morse_gamma / dq;
      prefactor = std::pow(2.0 * std::numbers::pi * std::numbers::pi / (3.0 * dq * dq), 0.25);
    }
  }
  double operator()(double x) const {
    if (harmonic) return prefactor * std::exp(-scale * x * x);
    const double u = scale * x;
    return prefactor * std::exp(-u - std::exp(-2.0 * u));
  }
  bool harmonic;
  double scale = 0.0;
  double prefactor = 0.0;
};

}  // namespace

double ground_amplitude(const PotentialModel& model, double x) { return Amplitude(model)(x); }

double curvature_potential(const PotentialModel& model, double xi) {
  return potential_value(model, xi) - ground_energy(model);
}

RealField shifted_ground_state(const PotentialModel& model, const Grid& grid, double shift,
                               const Tolerances& tol) {
  const Amplitude amp(model);
  auto psi0 = RealField::sample(grid, [&](double x) { return amp(x - shift); });
  const double edge = boundary_mass(density(to_complex(psi0)), tol.boundary_points);
  if (edge > tol.boundary_mass) {
    std::ostringstream os;
    os << "grid [" << grid.x_min() << ", " << grid.x_max() << "] does not cover the ground state of "
       << model.name() << " shifted by " << shift << " (boundary mass " << edge << ")";
    fail(ErrorCategory::Coverage, os.str());
  }
  return psi0;
}

RealField ground_state(const PotentialModel& model, const Grid& grid, const Tolerances& tol) {
  return shifted_ground_state(model, grid, 0.0, tol);
}

GroundStateInfo ground_moments(const PotentialModel& model, const Grid& grid, const Tolerances& tol) {
  const auto psi0 = ground_state(model, grid, tol);
  const auto rho = density(to_complex(psi0));
  return {mean_position(rho), variance(rho), ground_energy(model)};
}

Grid default_grid(const PotentialModel& model, double q_lo, double q_hi, std::size_t n) {
  const double dq = ground_spread(model);
  if (model.kind() == ModelKind::Harmonic) return {q_lo - 12.0 * dq, q_hi + 12.0 * dq, n};
  const Grid provisional(-10.0 * dq, 80.0 * dq, 4097);
  const double q0 = ground_moments(model, provisional).q0;
  return {q_lo + q0 - 8.0 * dq, q_hi + q0 + 50.0 * dq, n};
}

}  // namespace gcs
