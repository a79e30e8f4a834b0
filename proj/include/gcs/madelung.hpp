#pragma once

#include <cstddef>

#include "gcs/coherent_state.hpp"
#include "gcs/grid.hpp"
#include "gcs/models.hpp"
#include "gcs/tolerances.hpp"

namespace gcs {

/// F = (sqrt rho)'' / sqrt rho. Samples outside [valid_begin, valid_end)
/// (density below the floor) hold the nearest valid value.
struct Curvature {
  RealField F;
  std::size_t valid_begin = 0;
  std::size_t valid_end = 0;
  std::size_t clamped() const noexcept { return F.size() - (valid_end - valid_begin); }
};

/// Throws Node when the above-floor region is not a single interval.
Curvature quantum_curvature(const RealField& rho, const Tolerances& tol = {});

/// V(x, t) at one instant of a trajectory, with the kinematics that built it.
struct PotentialSnapshot {
  RealField V;
  ClassicalPoint point;
  double dPdt = 0.0;
  double dQdt = 0.0;
};

enum class CurvatureRoute {
  /// (hbar^2/2m) F(xi) = V_model(xi) - E0 in closed form.
  Analytic,
  /// F computed by spectral differentiation of the translated ground density.
  Numeric,
};

/// V(x,t) = (hbar^2/2m) F(x - Q) - (dP/dt) x - P^2/2m + (dQ/dt P + dP/dt Q)/2
/// with dQ/dt = P/m.
PotentialSnapshot assemble_potential(const PotentialModel& model, const Grid& grid,
                                     const ClassicalPoint& point, double dPdt,
                                     CurvatureRoute route = CurvatureRoute::Analytic,
                                     const Tolerances& tol = {});

/// ||d_t rho + (1/m) d_x(rho d_x S)|| / ||d_t rho|| (absolute if d_t rho == 0).
double continuity_residual(const RealField& rho_t, const RealField& rho, const RealField& S,
                           double mass);

/// Density-weighted ||d_t S + (d_x S)^2/2m - (hbar^2/2m) F + V|| over the
/// region where rho exceeds the curvature floor, divided by the weighted ||V||.
double hjm_residual(const RealField& S_t, const RealField& S, const RealField& rho,
                    const RealField& V, double mass, double hbar, const Tolerances& tol = {});

/// hbar * arg(after * conj(before)) / dt, pointwise. Free of branch jumps as
/// long as the local phase advances by less than pi over dt.
RealField phase_rate(const ComplexField& before, const ComplexField& after, double dt,
                     double hbar);

}  // namespace gcs
