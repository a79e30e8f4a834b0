#pragma once

#include <string>

#include "gcs/grid.hpp"
#include "gcs/tolerances.hpp"

namespace gcs {

enum class ModelKind { Harmonic, Morse };

/// An analytic potential family with a closed-form ground state.
///
/// Harmonic: V = m w^2 x^2 / 2.
/// Morse:    V = U0 (1 - exp(-a x))^2 with U0 = lambda^2 E_a and
///           E_a = (hbar a)^2 / 2m. Only lambda = 1 has a built-in ground state.
class PotentialModel {
 public:
  static PotentialModel harmonic(double omega, double mass = 1.0, double hbar = 1.0);
  static PotentialModel morse(double a, double lambda = 1.0, double mass = 1.0, double hbar = 1.0);

  ModelKind kind() const noexcept { return kind_; }
  double mass() const noexcept { return mass_; }
  double hbar() const noexcept { return hbar_; }
  /// Harmonic angular frequency (zero for Morse).
  double omega() const noexcept { return omega_; }
  /// Morse inverse range a (zero for Harmonic).
  double range() const noexcept { return a_; }
  double lambda() const noexcept { return lambda_; }
  /// (hbar a)^2 / 2m for Morse.
  double energy_unit() const noexcept;
  /// U0 for Morse, hbar*omega for Harmonic: the energy scale used in tolerances.
  double energy_scale() const noexcept;
  /// energy_scale / ground_spread: the force unit (U0*a for Morse).
  double force_scale() const noexcept;
  double well_depth() const noexcept { return lambda_ * lambda_ * energy_unit(); }

  std::string name() const;

 private:
  PotentialModel() = default;

  ModelKind kind_ = ModelKind::Harmonic;
  double mass_ = 1.0;
  double hbar_ = 1.0;
  double omega_ = 0.0;
  double a_ = 0.0;
  double lambda_ = 0.0;
};

struct GroundStateInfo {
  double q0;   ///< <q>_0
  double dq2;  ///< <q^2>_0 - <q>_0^2
  double E0;
};

double potential_value(const PotentialModel& model, double x);
double potential_gradient(const PotentialModel& model, double x);
double ground_energy(const PotentialModel& model);

/// Closed-form (analytically normalized) ground-state amplitude Psi_0(x).
double ground_amplitude(const PotentialModel& model, double x);

/// Analytic spread Delta q: sqrt(hbar / 2 m w) or 2 gamma / a.
double ground_spread(const PotentialModel& model);

/// (hbar^2/2m) F(xi) for the exact ground density, i.e. V(xi) - E0.
double curvature_potential(const PotentialModel& model, double xi);

/// Ground state sampled on the grid. Throws Coverage when the grid cuts
/// the state off (boundary mass above tol.boundary_mass).
RealField ground_state(const PotentialModel& model, const Grid& grid, const Tolerances& tol = {});

/// Psi_0(x - shift) sampled analytically, with the same coverage check.
RealField shifted_ground_state(const PotentialModel& model, const Grid& grid, double shift,
                               const Tolerances& tol = {});

/// <q>_0 and Delta q^2 by quadrature of the sampled ground state.
GroundStateInfo ground_moments(const PotentialModel& model, const Grid& grid,
                               const Tolerances& tol = {});

/// Default domain for packets displaced within [q_lo, q_hi]. Morse tails
/// decay slowly to the right, so the padding is asymmetric.
Grid default_grid(const PotentialModel& model, double q_lo, double q_hi, std::size_t n);

}  // namespace gcs
