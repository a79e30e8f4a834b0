#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "common.hpp"
#include "gcs/calculus.hpp"
#include "gcs/classical.hpp"

namespace gcs::app {

namespace {

class Report {
 public:
  explicit Report(std::ostream& out) : out_(out) { out_ << "check,value,threshold,status\n"; }

  /// Passes when value <= threshold (NaN fails).
  bool below(const std::string& name, double value, double threshold) {
    char t[32];
    std::snprintf(t, sizeof t, "%g", threshold);
    return line(name, value, t, value <= threshold);
  }

  bool line(const std::string& name, double value, const std::string& threshold, bool pass) {
    out_ << name << ',' << format_number(value) << ',' << threshold << ',' << (pass ? "PASS" : "FAIL") << '\n';
    if (!pass) ++failures_;
    return pass;
  }

  int failures() const { return failures_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct RunSummary {
  double norm_drift = 0.0;
  double overlap_deficit = 0.0;
  double dq2_drift = 0.0;
  double ehrenfest = 0.0;
  double center = 0.0;
  double hellinger = 0.0;
  double hjm = 0.0;
};

// Like std::max but a NaN sample poisons the result.
double worst(double acc, double v) { return std::isnan(acc) || std::isnan(v) ? nan : std::max(acc, v); }

RunSummary summarize(const ResolvedRun& run, const RunResult& r) {
  const auto ground = ground_moments(run.model, run.grid, run.tolerances);
  const double dq = std::sqrt(ground.dq2);
  RunSummary s;
  const auto& first = r.records.front();
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const auto& d = r.records[i];
    s.norm_drift = worst(s.norm_drift, std::abs(d.norm - first.norm));
    s.overlap_deficit = worst(s.overlap_deficit, 1.0 - d.overlap);
    s.dq2_drift = worst(s.dq2_drift, std::abs(d.dq2 / first.dq2 - 1.0));
    s.ehrenfest = worst(s.ehrenfest, std::abs(d.ehrenfest_residual) / ehrenfest_unit(run.model));
    s.center = worst(s.center, std::abs(d.q_mean - ground.q0 - r.trajectory.points[i].Q) / dq);
    s.hellinger = worst(s.hellinger, d.hellinger);
    s.hjm = worst(s.hjm, d.hjm_residual);
  }
  return s;
}

}  // namespace

int cmd_verify(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto run = resolve(load_config(config));
    const auto& model = run.model;
    const auto& grid = run.grid;
    const auto& tol = run.tolerances;
    Report report(out);

    // Coverage of the translated ground state along the whole orbit, before
    // anything is propagated.
    const auto traj = integrate_trajectory(model, run.initial.Q, run.initial.P, run.propagation.dt, run.steps);
    double edge = 0.0;
    {
      Tolerances lax = tol;
      lax.boundary_mass = std::numeric_limits<double>::infinity();
      const auto [lo, hi] = std::minmax_element(traj.points.begin(), traj.points.end(),
                                                [](const auto& a, const auto& b) { return a.Q < b.Q; });
      for (const double Q : {lo->Q, hi->Q}) {
        const auto psi = shifted_ground_state(model, grid, Q, lax);
        edge = std::max(edge, boundary_mass(density(to_complex(psi)), tol.boundary_points));
      }
    }
    if (!report.below("coverage", edge, tol.boundary_mass)) {
      out << "failures=" << report.failures() << '\n';
      return 1;
    }

    // Ground state and curvature identity.
    const auto psi0 = ground_state(model, grid, tol);
    const auto rho0 = density(to_complex(psi0));
    report.below("ground_norm", std::abs(integrate(rho0) - 1.0), tol.normalization);
    const double dq = ground_spread(model);
    report.below("ground_variance", std::abs(variance(rho0) / (dq * dq) - 1.0), 1e-8);
    {
      const auto curv = quantum_curvature(rho0, tol);
      const double c = model.hbar() * model.hbar() / (2.0 * model.mass());
      const double peak = *std::max_element(rho0.begin(), rho0.end());
      double worst = 0.0;
      for (std::size_t i = 0; i < grid.n(); ++i) {
        if (rho0[i] <= 1e-8 * peak) continue;
        worst = std::max(worst, std::abs(c * curv.F[i] - curvature_potential(model, grid.x(i))));
      }
      report.below("curvature_identity", worst / model.energy_scale(),
                   model.kind() == ModelKind::Morse ? 1e-5 : 1e-6);
    }

    // Hydrodynamic equations for the exact coherent state at the initial point.
    {
      const auto& p = run.initial;
      const double m = model.mass();
      const double dPdt = classical_force(model, p.Q);
      const double dQdt = p.P / m;
      const auto pot = assemble_potential(model, grid, p, dPdt, CurvatureRoute::Analytic, tol);
      auto rho_at = [&](double Q) { return density(to_complex(shifted_ground_state(model, grid, Q, tol))); };
      const auto rho = rho_at(p.Q);
      const auto S = RealField::sample(grid, [&](double x) { return p.P * x - 0.5 * p.P * p.Q; });
      const auto S_t = RealField::sample(
          grid, [&](double x) { return dPdt * x - 0.5 * dPdt * p.Q - 0.5 * p.P * dQdt; });
      report.below("hjm_residual", hjm_residual(S_t, S, rho, pot.V, m, model.hbar(), tol), 1e-5);
      const double h = dQdt != 0.0 ? 1e-3 * dq / std::abs(dQdt) : 1.0;
      const auto rho_t = linear_combination(0.5 / h, rho_at(p.Q + dQdt * h), -0.5 / h, rho_at(p.Q - dQdt * h));
      report.below("continuity_residual", continuity_residual(rho_t, rho, S, m), 1e-6);

      const double a_exact = linear_coefficient(model, p, 0.0);
      const double a_fit = linear_coefficient_numeric(
          assemble_potential(model, grid, p, 0.0, CurvatureRoute::Analytic, tol).V, model);
      report.below("linear_coefficient", std::abs(a_fit - a_exact) / std::max(std::abs(a_exact), model.force_scale()),
                   1e-6);
      const double mirror = model.kind() == ModelKind::Morse ? potential_value(model, -p.Q) : potential_value(model, p.Q);
      report.below("vclass_mirror", std::abs(v_class(model, p.Q) - mirror) / model.energy_scale(), 1e-14);
    }

    // Feedback propagation and its dt-refinement twin.
    PropagatorConfig fine = run.propagation;
    fine.dt = run.propagation.dt / 2.0;
    RunSummary coarse_s, fine_s;
    try {
      coarse_s = summarize(run, evolve_feedback(model, grid, run.initial, run.propagation, run.duration, tol));
      fine_s = summarize(run, evolve_feedback(model, grid, run.initial, fine, run.duration, tol));
    } catch (const Error& e) {
      err << "propagation stopped: " << e.what() << '\n';
      report.line("propagation", nan, "completed", false);
      out << "failures=" << report.failures() << '\n';
      return 1;
    }
    report.below("unitarity_drift", coarse_s.norm_drift, tol.unitarity);
    report.below("overlap_deficit", coarse_s.overlap_deficit, 1e-4);
    report.below("dq2_drift", coarse_s.dq2_drift, 1e-4);
    report.below("ehrenfest_residual", coarse_s.ehrenfest, 1e-5);
    report.below("center_tracking", coarse_s.center, 1e-4);
    report.below("propagated_hjm_residual", coarse_s.hjm, 1e-5);
    // Second order in dt; errors already at round-off cannot show a ratio.
    constexpr double resolved = 1e-10;
    if (coarse_s.hellinger < resolved) {
      report.line("convergence_ratio", nan, "error<1e-10", true);
    } else {
      const double ratio = coarse_s.hellinger / fine_s.hellinger;
      report.line("convergence_ratio", ratio, "[3,5.5]", ratio >= 3.0 && ratio <= 5.5);
    }
    out << "failures=" << report.failures() << '\n';
    return report.failures() == 0 ? 0 : 1;
  });
}

}  // namespace gcs::app
