#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "gcs/classical.hpp"
#include "gcs/coherent_state.hpp"
#include "gcs/diagnostics.hpp"
#include "gcs/madelung.hpp"

namespace gcs {

enum class Scheme { CrankNicolson, SplitStep };
enum class Mode { Feedback, Static };

struct PropagatorConfig {
  double dt = 1e-3;
  Scheme scheme = Scheme::CrankNicolson;
  Mode mode = Mode::Feedback;
  std::size_t snapshot_stride = 1;
  /// Accuracy order of the Crank-Nicolson kinetic stencil: 2, 4 or 6.
  int stencil_order = 6;
};

void validate(const PropagatorConfig& config);

/// One unitary step of i hbar psi_t = -(hbar^2/2m) psi_xx + V psi.
/// Keeps its FFT plans / band storage between calls; not shareable across
/// threads.
class Stepper {
 public:
  Stepper(const Grid& grid, double mass, double hbar, Scheme scheme, int stencil_order = 6);
  ~Stepper();
  Stepper(Stepper&&) noexcept;
  Stepper& operator=(Stepper&&) noexcept;

  ComplexField step(const ComplexField& psi, const RealField& V, double dt);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

ComplexField step(const ComplexField& psi, const RealField& V, double dt, Scheme scheme,
                  double mass, double hbar, int stencil_order = 6);

/// Emitted every snapshot_stride steps, at t = 0 and at the final step.
struct Frame {
  std::size_t step = 0;
  GCSState state;
  PotentialSnapshot potential;
  DiagnosticsRecord diagnostics;
};

using FrameSink = std::function<void(Frame&&)>;

struct RunResult {
  Trajectory trajectory;
  /// One record per step, including t = 0.
  std::vector<DiagnosticsRecord> records;
  /// Effective step (T divided into a whole number of steps).
  double dt = 0.0;
};

/// Classical Verlet step, potential assembled at the time-centered classical
/// state, then one quantum step. Throws Unitarity on norm drift beyond
/// tol.unitarity and Coverage when boundary mass exceeds tol.boundary_alarm.
RunResult evolve_feedback(const PotentialModel& model, const Grid& grid,
                          const ClassicalPoint& initial, const PropagatorConfig& config,
                          double duration, const Tolerances& tol = {},
                          const FrameSink& sink = {});

/// Propagation in the fixed potential V_model(x) from a displaced state;
/// diagnostics are taken against the twin classical trajectory. Mass leaving
/// through the edges is recorded, not raised.
RunResult evolve_static(const GCSState& initial, const PropagatorConfig& config, double duration,
                        const Tolerances& tol = {}, const FrameSink& sink = {});

}  // namespace gcs
