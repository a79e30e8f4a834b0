#include "gcs/classical.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gcs {

double classical_force(const PotentialModel& model, double Q) {
  if (model.kind() == ModelKind::Harmonic) return -model.mass() * model.omega() * model.omega() * Q;
  const double a = model.range();
  const double e = std::exp(a * Q);
  return 2.0 * a * model.well_depth() * (e - e * e);
}

double v_class(const PotentialModel& model, double Q) {
  if (model.kind() == ModelKind::Harmonic) return potential_value(model, Q);
  const double s = 1.0 - std::exp(model.range() * Q);
  return model.well_depth() * s * s;
}

double classical_energy(const PotentialModel& model, double Q, double P) {
  return P * P / (2.0 * model.mass()) + v_class(model, Q);
}

double classical_period(const PotentialModel& model, double energy) {
  if (model.kind() == ModelKind::Harmonic) return 2.0 * std::numbers::pi / model.omega();
  const double U0 = model.well_depth();
  if (!(energy >= 0.0 && energy < U0)) {
    fail(ErrorCategory::Precondition, "Morse orbit is bounded only for 0 <= E < U0");
  }
  const double omega0 = model.range() * std::sqrt(2.0 * U0 / model.mass());
  return 2.0 * std::numbers::pi / (omega0 * std::sqrt(1.0 - energy / U0));
}

std::pair<double, double> turning_points(const PotentialModel& model, double energy) {
  if (energy < 0.0) fail(ErrorCategory::Precondition, "energy below the bottom of V_class");
  if (model.kind() == ModelKind::Harmonic) {
    const double q = std::sqrt(2.0 * energy / model.mass()) / model.omega();
    return {-q, q};
  }
  const double s = std::sqrt(energy / model.well_depth());
  if (s >= 1.0) fail(ErrorCategory::Precondition, "Morse orbit is unbounded at this energy");
  return {std::log(1.0 - s) / model.range(), std::log(1.0 + s) / model.range()};
}

double linear_coefficient(const PotentialModel& model, const ClassicalPoint& point, double dPdt) {
  // dV/dx at x = 0; the curvature term contributes V_model'(-Q) = classical_force(Q).
  return -dPdt + classical_force(model, point.Q);
}

double linear_coefficient_numeric(const RealField& V, const PotentialModel& model, const LinearFitOptions& options) {
  const auto& g = V.grid();
  const double w = options.half_width * ground_spread(model);
  if (!(w > 0.0) || options.degree < 1) fail(ErrorCategory::Extraction, "degenerate fit window");
  if (-w < g.x_min() || w > g.x_max()) {
    std::ostringstream os;
    os << "fit window [" << -w << ", " << w << "] around x = 0 is not inside the grid [" << g.x_min() << ", "
       << g.x_max() << "]";
    fail(ErrorCategory::Extraction, os.str());
  }
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < g.n(); ++i) {
    if (std::abs(g.x(i)) <= w) idx.push_back(i);
  }
  const int cols = options.degree + 1;
  if (static_cast<int>(idx.size()) < cols + 3) {
    fail(ErrorCategory::Extraction, "fit window holds " + std::to_string(idx.size()) + " samples for a degree-" +
                                        std::to_string(options.degree) + " fit; refine the grid");
  }
  Eigen::MatrixXd A(idx.size(), cols);
  Eigen::VectorXd b(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const double s = g.x(idx[r]) / w;
    double p = 1.0;
    for (int c = 0; c < cols; ++c) {
      A(r, c) = p;
      p *= s;
    }
    b(r) = V[idx[r]];
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < cols) fail(ErrorCategory::Extraction, "ill-conditioned polynomial fit");
  const Eigen::VectorXd coef = qr.solve(b);
  return coef(1) / w;
}

Trajectory integrate_trajectory(const PotentialModel& model, double Q0, double P0, double dt, std::size_t steps,
                                std::optional<QInterval> allowed) {
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorCategory::Precondition, "time step must be positive");
  if (!std::isfinite(Q0) || !std::isfinite(P0)) fail(ErrorCategory::Precondition, "initial point must be finite");
  if (model.kind() == ModelKind::Morse && classical_energy(model, Q0, P0) >= model.well_depth()) {
    fail(ErrorCategory::Precondition, "classical energy at or above U0: the orbit in V_class is unbounded");
  }
  const double m = model.mass();
  Trajectory traj;
  traj.dt = dt;
  traj.points.reserve(steps + 1);
  traj.forces.reserve(steps + 1);

  double Q = Q0;
  double P = P0;
  double F = classical_force(model, Q);
  auto check = [&](std::size_t step) {
    if (allowed && (Q < allowed->lo || Q > allowed->hi)) {
      std::ostringstream os;
      os << "trajectory left [" << allowed->lo << ", " << allowed->hi << "] at step " << step << " (Q = " << Q << ")";
      fail(ErrorCategory::Escape, os.str());
    }
  };
  check(0);
  traj.points.push_back({Q, P, 0.0});
  traj.forces.push_back(F);
  for (std::size_t s = 1; s <= steps; ++s) {
    const double P_half = P + 0.5 * dt * F;
    Q += dt * P_half / m;
    F = classical_force(model, Q);
    P = P_half + 0.5 * dt * F;
    check(s);
    traj.points.push_back({Q, P, static_cast<double>(s) * dt});
    traj.forces.push_back(F);
  }
  return traj;
}

namespace {

// Nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(n);
  std::vector<double> w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

}  // namespace

std::vector<VClassSample> reconstruct_vclass(const PotentialModel& model, const Grid& grid,
                                             const std::vector<double>& Q_values, const LinearFitOptions& options) {
  const auto [nodes, weights] = gauss_legendre(24);
  std::vector<VClassSample> out;
  out.reserve(Q_values.size());
  for (const double Q : Q_values) {
    double integral = 0.0;
    if (Q != 0.0) {
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        const double s = 0.5 * Q * (nodes[k] + 1.0);
        const auto snap = assemble_potential(model, grid, {s, 0.0, 0.0}, 0.0);
        integral += 0.5 * Q * weights[k] * linear_coefficient_numeric(snap.V, model, options);
      }
    }
    const double analytic = v_class(model, Q);
    const double numeric = -integral;
    const double diff = std::abs(numeric - analytic);
    const double rel = diff == 0.0 ? 0.0 : diff / std::max(std::abs(analytic), 1e-300);
    out.push_back({Q, analytic, numeric, rel});
  }
  return out;
}

}  // namespace gcs
