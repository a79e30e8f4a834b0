#pragma once

#include <optional>
#include <vector>

#include "gcs/coherent_state.hpp"
#include "gcs/madelung.hpp"
#include "gcs/models.hpp"

namespace gcs {

/// dP/dt = -dV_class/dQ. Morse: 2 a U0 (e^{aQ} - e^{2aQ}); Harmonic: -m w^2 Q.
double classical_force(const PotentialModel& model, double Q);

/// Morse: U0 (1 - e^{aQ})^2, the x -> -x mirror of the well. Harmonic: V itself.
double v_class(const PotentialModel& model, double Q);

double classical_energy(const PotentialModel& model, double Q, double P);

/// Period of the bounded orbit at energy E (E < U0 for Morse).
double classical_period(const PotentialModel& model, double energy);

/// Turning points of V_class at energy E.
std::pair<double, double> turning_points(const PotentialModel& model, double energy);

/// Coefficient of the term linear in x when V(x,t) is expanded in powers of x.
double linear_coefficient(const PotentialModel& model, const ClassicalPoint& point, double dPdt);

struct LinearFitOptions {
  int degree = 8;
  /// Half-width of the fit window around x = 0, in units of Delta q.
  double half_width = 0.25;
};

/// Same coefficient read from a sampled potential by a least-squares
/// polynomial fit around x = 0. Throws Extraction when the window holds too
/// few samples or x = 0 lies outside the grid.
double linear_coefficient_numeric(const RealField& V, const PotentialModel& model,
                                  const LinearFitOptions& options = {});

struct Trajectory {
  std::vector<ClassicalPoint> points;
  std::vector<double> forces;
  double dt = 0.0;

  double energy(const PotentialModel& model, std::size_t i) const {
    return classical_energy(model, points[i].Q, points[i].P);
  }
};

struct QInterval {
  double lo;
  double hi;
};

/// Velocity-Verlet integration of dQ/dt = P/m, dP/dt = classical_force(Q).
/// Throws Escape (with the step index) when Q leaves `allowed`, and
/// Precondition for unbounded Morse energies.
Trajectory integrate_trajectory(const PotentialModel& model, double Q0, double P0, double dt,
                                std::size_t steps,
                                std::optional<QInterval> allowed = std::nullopt);

struct VClassSample {
  double Q;
  double analytic;
  double numeric;
  double relative_deviation;
};

/// V_class reconstructed from the fitted linear coefficient (dP/dt = 0)
/// integrated from 0 to Q by Gauss-Legendre quadrature.
std::vector<VClassSample> reconstruct_vclass(const PotentialModel& model, const Grid& grid,
                                             const std::vector<double>& Q_values,
                                             const LinearFitOptions& options = {});

}  // namespace gcs
