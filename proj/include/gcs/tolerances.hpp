#pragma once

#include <numbers>

namespace gcs {

/// Run-wide numerical thresholds. One instance is threaded through the
/// modules so a run configuration can override any of them.
struct Tolerances {
  /// |norm - 1| allowed before an expectation value is refused.
  double normalization = 1e-6;
  /// Probability mass allowed within `boundary_points` of either edge.
  double boundary_mass = 1e-10;
  int boundary_points = 5;
  /// Density (relative to peak) below which the phase is not trusted.
  double phase_floor = 1e-12;
  /// Largest accepted phase increment between neighbouring valid points.
  double max_phase_increment = 0.75 * std::numbers::pi;
  /// Density (relative to peak) below which the quantum curvature is clamped.
  double curvature_floor = 1e-10;
  /// Norm drift that raises the unitarity alarm during propagation.
  double unitarity = 1e-8;
  /// Boundary mass that aborts a propagation (packet reached the edge).
  double boundary_alarm = 1e-6;
};

}  // namespace gcs
