#pragma once

#include <string>
#include <vector>

#include "gcs/coherent_state.hpp"
#include "gcs/madelung.hpp"
#include "gcs/models.hpp"

namespace gcs {

struct DiagnosticsRecord {
  double t = 0.0;
  double norm = 0.0;
  double q_mean = 0.0;
  double p_mean = 0.0;
  double dq2 = 0.0;
  /// Bhattacharyya overlap with Psi_0^2(x - Q), Q from the classical trajectory.
  double overlap = 0.0;
  /// dP/dt + dV/dx at x = <q> - <q>_0.
  double ehrenfest_residual = 0.0;
  double hjm_residual = 0.0;
  double boundary_mass = 0.0;
  /// Bhattacharyya overlap with Psi_0^2 centered on the measured <q>.
  double shape_overlap = 0.0;
  /// sqrt(1 - overlap), evaluated without cancellation.
  double hellinger = 0.0;
  /// ||rho - Psi_0^2(x - Q)||_2
  double l2_distance = 0.0;
  /// dP/dt + dV/dx at x = <q> itself.
  double ehrenfest_residual_raw = 0.0;
  /// dP/dt + <dV/dx>.
  double ehrenfest_theorem_residual = 0.0;
};

/// Column names in serialization order.
std::vector<std::string> csv_columns();
std::string csv_header();
std::string csv_row(const DiagnosticsRecord& record);
/// %.17g, the precision used for every CSV number this project writes.
std::string format_number(double value);

/// ∫ sqrt(rho(x) Psi_0^2(x - Q)) dx. Throws Coverage if the reference leaves
/// the grid.
double coherence_overlap(const RealField& rho, const PotentialModel& model, double Q,
                         const Tolerances& tol = {});

/// sqrt(1/2 ∫ (sqrt rho - sqrt rho_ref)^2 dx) with both densities normalized.
double hellinger_distance(const RealField& rho, const PotentialModel& model, double Q,
                          const Tolerances& tol = {});

/// Shared, per-run constants (ground-state mean and spread on the run grid).
class Recorder {
 public:
  Recorder(const PotentialModel& model, const Grid& grid, const Tolerances& tol = {});

  const GroundStateInfo& ground() const noexcept { return ground_; }
  const PotentialModel& model() const noexcept { return model_; }

  /// `phase_rate` is d_t S on the grid; without it, or when the phase cannot
  /// be unwrapped, hjm_residual is NaN.
  /// Throws Diagnostics when grids or times disagree.
  DiagnosticsRecord operator()(const ComplexField& psi, const ClassicalPoint& point,
                               const PotentialSnapshot& potential,
                               const RealField* phase_rate = nullptr) const;

 private:
  PotentialModel model_;
  Grid grid_;
  Tolerances tol_;
  GroundStateInfo ground_;
};

DiagnosticsRecord record(const ComplexField& psi, const PotentialModel& model,
                         const ClassicalPoint& point, const PotentialSnapshot& potential,
                         const RealField* phase_rate = nullptr, const Tolerances& tol = {});

}  // namespace gcs
