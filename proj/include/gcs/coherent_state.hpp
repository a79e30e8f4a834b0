#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "gcs/grid.hpp"
#include "gcs/models.hpp"
#include "gcs/tolerances.hpp"

namespace gcs {

/// Center of a generalized coherent state: Q = <q>_alpha - <q>_0,
/// P = <p>_alpha, at time t.
struct ClassicalPoint {
  double Q = 0.0;
  double P = 0.0;
  double t = 0.0;
};

void require_finite(const ClassicalPoint& point);

enum class TranslationMethod { Identity, Spectral, Quintic };

/// Psi_alpha = D(alpha) Psi_0 together with the label it was built from.
struct GCSState {
  ComplexField psi;
  ClassicalPoint point;
  PotentialModel model;
  TranslationMethod translation = TranslationMethod::Identity;
};

/// Translate psi0 by `shift`. Spectral when psi0 has decayed at the edges,
/// quintic interpolation otherwise. Throws Coverage when the translated
/// support leaves the grid.
RealField translate(const RealField& psi0, double shift, const Tolerances& tol,
                    TranslationMethod* used = nullptr);

/// exp(-iPQ/2hbar) exp(iPx/hbar) Psi_0(x - Q).
ComplexField displace(const RealField& psi0, const ClassicalPoint& point, double hbar,
                      const Tolerances& tol = {}, TranslationMethod* used = nullptr);

/// Samples the model ground state on the grid and displaces it.
GCSState make_coherent_state(const PotentialModel& model, const Grid& grid,
                             const ClassicalPoint& point, const Tolerances& tol = {});

/// Polar decomposition psi = sqrt(rho) exp(iS/hbar). S is unwrapped from the
/// density peak outward; below the phase floor it is extrapolated linearly
/// and `extrapolated[i]` is set.
struct DensityPhase {
  RealField rho;
  RealField S;
  std::vector<bool> extrapolated;
  std::size_t anchor = 0;
};

/// Throws Unwrap (with the offending coordinate) when neighbouring valid
/// samples differ in phase by more than tol.max_phase_increment.
DensityPhase density_phase(const ComplexField& psi, double hbar, const Tolerances& tol = {});

/// sqrt(2 hbar) (Q + iP). A label only; never enters the numerics.
std::complex<double> alpha_label(const ClassicalPoint& point, double hbar);

}  // namespace gcs
