#include "gcs/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "gcs/calculus.hpp"

namespace gcs {

std::vector<std::string> csv_columns() {
  return {"t",
          "norm",
          "q_mean",
          "p_mean",
          "dq2",
          "overlap",
          "ehrenfest_residual",
          "hjm_residual",
          "boundary_mass",
          "shape_overlap",
          "hellinger",
          "l2_distance",
          "ehrenfest_residual_raw",
          "ehrenfest_theorem_residual"};
}

std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string csv_row(const DiagnosticsRecord& r) {
  const double v[] = {r.t,
                      r.norm,
                      r.q_mean,
                      r.p_mean,
                      r.dq2,
                      r.overlap,
                      r.ehrenfest_residual,
                      r.hjm_residual,
                      r.boundary_mass,
                      r.shape_overlap,
                      r.hellinger,
                      r.l2_distance,
                      r.ehrenfest_residual_raw,
                      r.ehrenfest_theorem_residual};
  std::string out;
  for (const double x : v) {
    if (!out.empty()) out += ',';
    out += format_number(x);
  }
  return out;
}

namespace {

struct Comparison {
  double overlap;
  double hellinger;
  double l2;
};

// The overlap is taken as (N1 + N2)/2 - (1/2)∫(sqrt rho - ref)^2 so that
// values near 1 keep their low digits.
Comparison compare(const RealField& rho, const RealField& ref_amplitude) {
  const auto& g = rho.grid();
  const std::size_t n = g.n();
  std::vector<double> sq(n), sq_norm(n), ref2(n), diff2(n);
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = std::sqrt(std::max(rho[i], 0.0));
    ref2[i] = ref_amplitude[i] * ref_amplitude[i];
    sq[i] = (a[i] - std::abs(ref_amplitude[i])) * (a[i] - std::abs(ref_amplitude[i]));
    diff2[i] = (rho[i] - ref2[i]) * (rho[i] - ref2[i]);
  }
  const double n1 = integrate(rho.values(), g.dx());
  const double n2 = integrate(ref2, g.dx());
  const double overlap = 0.5 * (n1 + n2) - 0.5 * integrate(sq, g.dx());
  const double s1 = 1.0 / std::sqrt(n1);
  const double s2 = 1.0 / std::sqrt(n2);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] * s1 - std::abs(ref_amplitude[i]) * s2;
    sq_norm[i] = d * d;
  }
  const double h2 = 0.5 * integrate(sq_norm, g.dx());
  return {overlap, std::sqrt(std::max(h2, 0.0)), std::sqrt(std::max(integrate(diff2, g.dx()), 0.0))};
}

}  // namespace

double coherence_overlap(const RealField& rho, const PotentialModel& model, double Q, const Tolerances& tol) {
  return compare(rho, shifted_ground_state(model, rho.grid(), Q, tol)).overlap;
}

double hellinger_distance(const RealField& rho, const PotentialModel& model, double Q, const Tolerances& tol) {
  return compare(rho, shifted_ground_state(model, rho.grid(), Q, tol)).hellinger;
}

Recorder::Recorder(const PotentialModel& model, const Grid& grid, const Tolerances& tol)
    : model_(model), grid_(grid), tol_(tol), ground_(ground_moments(model, grid, tol)) {}

DiagnosticsRecord Recorder::operator()(const ComplexField& psi, const ClassicalPoint& point,
                                       const PotentialSnapshot& potential, const RealField* phase_rate) const {
  if (!(psi.grid() == grid_) || !(potential.V.grid() == grid_) || (phase_rate && !(phase_rate->grid() == grid_))) {
    fail(ErrorCategory::Diagnostics, "record inputs live on different grids");
  }
  const double t_scale = std::max(1.0, std::abs(point.t));
  if (std::abs(potential.point.t - point.t) > 1e-12 * t_scale) {
    fail(ErrorCategory::Diagnostics, "potential snapshot at t = " + format_number(potential.point.t) +
                                         " does not match the state at t = " + format_number(point.t));
  }
  require_finite(point);

  const double hbar = model_.hbar();
  const auto rho = density(psi);
  DiagnosticsRecord r;
  r.t = point.t;
  r.norm = integrate(rho);
  r.q_mean = mean_position(rho);
  r.p_mean = momentum_matrix_element(psi, hbar).real() / r.norm;
  r.dq2 = variance(rho);
  r.boundary_mass = boundary_mass(rho, tol_.boundary_points);

  const auto c = compare(rho, shifted_ground_state(model_, grid_, point.Q, tol_));
  r.overlap = c.overlap;
  r.hellinger = c.hellinger;
  r.l2_distance = c.l2;
  try {
    r.shape_overlap = compare(rho, shifted_ground_state(model_, grid_, r.q_mean - ground_.q0, tol_)).overlap;
  } catch (const Error& e) {
    if (e.category() != ErrorCategory::Coverage) throw;
    r.shape_overlap = std::numeric_limits<double>::quiet_NaN();
  }

  const auto& V = potential.V;
  r.ehrenfest_residual = potential.dPdt + interpolate_derivative(V, r.q_mean - ground_.q0);
  r.ehrenfest_residual_raw = potential.dPdt + interpolate_derivative(V, r.q_mean);
  const auto dV = first_derivative(V, DerivativeMethod::Central5);
  std::vector<double> w(rho.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = rho[i] * dV[i];
  r.ehrenfest_theorem_residual = potential.dPdt + integrate(w, grid_.dx()) / r.norm;

  r.hjm_residual = std::numeric_limits<double>::quiet_NaN();
  if (phase_rate) {
    try {
      const auto dp = density_phase(psi, hbar, tol_);
      // The quantum potential is scale free, so lost edge mass does not matter.
      std::vector<double> unit(rho.size());
      for (std::size_t i = 0; i < unit.size(); ++i) unit[i] = rho[i] / r.norm;
      r.hjm_residual = hjm_residual(*phase_rate, dp.S, RealField(grid_, std::move(unit)), V, model_.mass(), hbar, tol_);
    } catch (const Error& e) {
      // A node in a spreading packet leaves the residual undefined, not the run broken.
      if (e.category() != ErrorCategory::Unwrap && e.category() != ErrorCategory::Node) throw;
    }
  }
  return r;
}

DiagnosticsRecord record(const ComplexField& psi, const PotentialModel& model, const ClassicalPoint& point,
                         const PotentialSnapshot& potential, const RealField* phase_rate, const Tolerances& tol) {
  return Recorder(model, psi.grid(), tol)(psi, point, potential, phase_rate);
}

}  // namespace gcs
