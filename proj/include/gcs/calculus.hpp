#pragma once

#include <span>
#include <vector>

#include "gcs/grid.hpp"
#include "gcs/tolerances.hpp"

namespace gcs {

enum class DerivativeMethod {
  /// FFT on the periodic embedding; the field must have decayed at both ends.
  Spectral,
  /// Fourth-order finite differences, one-sided near the edges.
  Central5,
};

RealField first_derivative(const RealField& f, DerivativeMethod method);
ComplexField first_derivative(const ComplexField& f, DerivativeMethod method);
RealField second_derivative(const RealField& f, DerivativeMethod method);
ComplexField second_derivative(const ComplexField& f, DerivativeMethod method);

/// Composite Simpson for odd n, trapezoid for even n.
double integrate(const RealField& f);
double integrate(std::span<const double> values, double dx);

/// ∫|psi|^2 dx
double norm(const ComplexField& psi);

enum class Moment { X, X2, P, P2 };

/// <x>, <x^2>, <p> or <p^2> of a normalized state; p = -i hbar d/dx.
/// Throws Precondition when |norm - 1| exceeds tol.normalization.
double expectation(const ComplexField& psi, Moment weight, double hbar,
                   const Tolerances& tol = {});

/// <psi| -i hbar d/dx |psi> without discarding the imaginary part, which
/// vanishes for any decayed state.
cplx momentum_matrix_element(const ComplexField& psi, double hbar);

/// Centered second moment ∫(x - <x>)^2 rho dx / ∫rho dx.
double variance(const RealField& rho);
double mean_position(const RealField& rho);

/// Mass of rho within `points` samples of either edge.
double boundary_mass(const RealField& rho, int points);
double boundary_mass(const ComplexField& psi, int points);

/// Finite-difference weights (Fornberg) for the m-th derivative at x0 from
/// the given nodes. Returned as weights[k] for derivative order k = 0..m.
std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes, int m);

/// Local Lagrange interpolation of order `points - 1` (quintic by default)
/// and its first derivative at an arbitrary x inside the grid.
double interpolate(const RealField& f, double x, int points = 6);
double interpolate_derivative(const RealField& f, double x, int points = 6);

/// Band-limited translation f(x) -> f(x - shift) on the periodic embedding.
RealField spectral_shift(const RealField& f, double shift);

/// Translation by local quintic interpolation; zero outside the grid.
RealField interpolated_shift(const RealField& f, double shift);

}  // namespace gcs
