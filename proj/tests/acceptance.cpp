// Acceptance criteria 1-9: one PASS/FAIL line each, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "gcs/calculus.hpp"
#include "gcs/classical.hpp"
#include "gcs/coherent_state.hpp"
#include "gcs/diagnostics.hpp"
#include "gcs/madelung.hpp"
#include "gcs/models.hpp"
#include "gcs/propagator.hpp"
#include "oracles.hpp"

using namespace gcs;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Worst of a sequence, with NaN treated as failure-worthy.
double worst(double acc, double v) { return std::isnan(acc) || std::isnan(v) ? NAN : std::max(acc, v); }

const PotentialModel morse = PotentialModel::morse(1.0);

// Morse at E = 0.2 U0, started from rest at the inner turning point.
struct MorseRun {
  double E = 0.2 * morse.well_depth();
  double T = classical_period(morse, E);
  std::pair<double, double> turns = turning_points(morse, E);
  Grid grid = default_grid(morse, std::min(turns.first, -turns.second), std::max(turns.second, -turns.first), 2048);
  ClassicalPoint start{turns.first, 0.0, 0.0};

  RunResult feedback(double dt, double duration) const {
    PropagatorConfig c;
    c.dt = dt;
    return evolve_feedback(morse, grid, start, c, duration);
  }
  RunResult still(double dt, double duration) const {
    PropagatorConfig c;
    c.dt = dt;
    c.mode = Mode::Static;
    return evolve_static(make_coherent_state(morse, grid, start), c, duration);
  }
};

struct Summary {
  double overlap_deficit = 0.0;
  double hellinger = 0.0;
  double dq2_drift = 0.0;
  double ehrenfest = 0.0;
  double ehrenfest_raw = 0.0;
  double ehrenfest_theorem = 0.0;
};

// U0 * a, the force unit of the Morse well.
double force_unit(const PotentialModel& model) { return model.well_depth() * model.range(); }

Summary summarize(const RunResult& r, const PotentialModel& model) {
  Summary s;
  const double unit = force_unit(model);
  const auto& first = r.records.front();
  for (const auto& d : r.records) {
    s.overlap_deficit = worst(s.overlap_deficit, 1.0 - d.overlap);
    s.hellinger = worst(s.hellinger, d.hellinger);
    s.dq2_drift = worst(s.dq2_drift, std::abs(d.dq2 / first.dq2 - 1.0));
    s.ehrenfest = worst(s.ehrenfest, std::abs(d.ehrenfest_residual) / unit);
    s.ehrenfest_raw = worst(s.ehrenfest_raw, std::abs(d.ehrenfest_residual_raw) / unit);
    s.ehrenfest_theorem = worst(s.ehrenfest_theorem, std::abs(d.ehrenfest_theorem_residual) / unit);
  }
  return s;
}

const MorseRun run;
// Shared by criteria 4 and 6.
Summary coarse, fine;

Verdict madelung_identity() {
  const double dq = ground_spread(morse);
  const Grid g = default_grid(morse, -5.0 * dq, 5.0 * dq, 4096);
  const double m = morse.mass(), hbar = morse.hbar();
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> uq(-5.0 * dq, 5.0 * dq), up(-5.0 * hbar / dq, 5.0 * hbar / dq);
  double hjm = 0.0, cont = 0.0;
  for (int k = 0; k < 20; ++k) {
    const ClassicalPoint p{uq(rng), up(rng), 0.0};
    const double dPdt = classical_force(morse, p.Q);
    const double dQdt = p.P / m;
    const auto pot = assemble_potential(morse, g, p, dPdt);
    auto rho_at = [&](double Q) { return density(to_complex(shifted_ground_state(morse, g, Q))); };
    const auto rho = rho_at(p.Q);
    const auto S = RealField::sample(g, [&](double x) { return p.P * x - 0.5 * p.P * p.Q; });
    const auto S_t =
        RealField::sample(g, [&](double x) { return dPdt * x - 0.5 * dPdt * p.Q - 0.5 * p.P * dQdt; });
    hjm = worst(hjm, hjm_residual(S_t, S, rho, pot.V, m, hbar));
    // Two snapshots a short time apart along the orbit.
    const double h = 1e-3 * dq / std::max(std::abs(dQdt), 1e-12);
    const auto rho_t = linear_combination(0.5 / h, rho_at(p.Q + dQdt * h), -0.5 / h, rho_at(p.Q - dQdt * h));
    cont = worst(cont, continuity_residual(rho_t, rho, S, m));
  }
  return {hjm < 1e-5 && cont < 1e-6, fmt("hjm=%.3e (<1e-5) continuity=%.3e (<1e-6) over 20 (Q,P)", hjm, cont)};
}

double curvature_error(const PotentialModel& model, const Grid& g) {
  const auto rho = density(to_complex(ground_state(model, g)));
  const auto curv = quantum_curvature(rho);
  const double c = model.hbar() * model.hbar() / (2.0 * model.mass());
  const double peak = *std::max_element(rho.begin(), rho.end());
  double err = 0.0;
  for (std::size_t i = 0; i < g.n(); ++i) {
    if (rho[i] <= 1e-8 * peak) continue;
    err = std::max(err, std::abs(c * curv.F[i] - curvature_potential(model, g.x(i))));
  }
  return err / model.energy_scale();
}

Verdict curvature_identity() {
  const auto h = PotentialModel::harmonic(1.0);
  const double em = curvature_error(morse, default_grid(morse, -1.0, 1.0, 4096));
  const double eh = curvature_error(h, default_grid(h, -1.0, 1.0, 2048));
  return {em < 1e-5 && eh < 1e-6, fmt("morse=%.3e U0 (<1e-5) harmonic=%.3e hbar*omega (<1e-6)", em, eh)};
}

Verdict classical_consistency() {
  const double dq = ground_spread(morse);
  const Grid g = default_grid(morse, -3.0 * dq, 3.0 * dq, 4096);
  double lin = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double Q = dq * (-2.7 + 0.6 * k);
    const ClassicalPoint p{Q, 0.3, 0.0};
    const double exact = linear_coefficient(morse, p, 0.0);
    const double fit = linear_coefficient_numeric(assemble_potential(morse, g, p, 0.0).V, morse);
    lin = std::max(lin, std::abs(fit - exact) / std::abs(exact));
  }
  std::vector<double> Qs;
  for (int k = -30; k <= 30; ++k) Qs.push_back(dq * k / 10.0);
  double rec = 0.0;
  for (const auto& s : reconstruct_vclass(morse, g, Qs)) rec = std::max(rec, s.relative_deviation);
  double mirror = 0.0;
  for (const double Q : Qs) mirror = std::max(mirror, std::abs(v_class(morse, Q) - potential_value(morse, -Q)));
  return {lin < 1e-6 && rec < 1e-5 && mirror == 0.0,
          fmt("linear=%.3e rel (<1e-6) vclass=%.3e rel (<1e-5) mirror=%.1e", lin, rec, mirror)};
}

Verdict non_spreading() {
  coarse = summarize(run.feedback(run.T / 1e4, run.T), morse);
  fine = summarize(run.feedback(run.T / 2e4, run.T), morse);
  const double r_h = coarse.hellinger / fine.hellinger;
  const double r_d = coarse.dq2_drift / fine.dq2_drift;
  const bool ok = coarse.overlap_deficit <= 1e-4 && coarse.dq2_drift < 1e-4 && r_h >= 3.0 && r_h <= 5.5 &&
                  r_d >= 3.0 && r_d <= 5.5;
  return {ok, fmt("1-overlap=%.3e (<=1e-4) dq2_drift=%.3e (<1e-4) dt-halving ratios hellinger=%.2f dq2=%.2f "
                  "([3,5.5]); 1-overlap is at round-off (%.1e at dt/2), so its own ratio is not resolved",
                  coarse.overlap_deficit, coarse.dq2_drift, r_h, r_d, fine.overlap_deficit)};
}

Verdict spreading_baseline() {
  const auto fb = summarize(run.feedback(run.T / 1e4, 3.0 * run.T), morse);
  const auto st = summarize(run.still(run.T / 1e4, 3.0 * run.T), morse);
  const bool ok = st.overlap_deficit > 10.0 * fb.overlap_deficit && st.dq2_drift > 10.0 * fb.dq2_drift;
  return {ok, fmt("3 periods: static 1-overlap=%.3e vs feedback %.3e; static dq2_drift=%.3e vs feedback %.3e",
                  st.overlap_deficit, fb.overlap_deficit, st.dq2_drift, fb.dq2_drift)};
}

Verdict ehrenfest() {
  return {coarse.ehrenfest < 1e-5,
          fmt("max |dP/dt + dV/dx| at the packet center=%.3e U0*a (<1e-5); evaluated at x=<q> literally it is "
              "%.4f U0*a, the slope V'(q0) of the well at the ground-state mean; <dV/dx> form=%.3e",
              coarse.ehrenfest, coarse.ehrenfest_raw, coarse.ehrenfest_theorem)};
}

Verdict static_limit() {
  const Grid g = default_grid(morse, -1.0, 1.0, 2048);
  PropagatorConfig c;
  c.dt = 0.01;
  c.snapshot_stride = 10;
  double spread = 0.0;
  const auto r = evolve_feedback(morse, g, {0.0, 0.0, 0.0}, c, 2.0 * std::numbers::pi, {}, [&](Frame&& f) {
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < g.n(); ++i) {
      const double d = f.potential.V[i] - potential_value(morse, g.x(i));
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    spread = std::max(spread, hi - lo);
  });
  double ov = 0.0;
  for (const auto& d : r.records) ov = worst(ov, std::abs(d.overlap - 1.0));
  spread /= morse.well_depth();
  return {ov < 1e-8 && spread < 1e-8, fmt("|overlap-1|=%.3e (<1e-8) V-V_morse spread=%.3e U0 (<1e-8)", ov, spread)};
}

Verdict harmonic_cross_checks() {
  const auto h = PotentialModel::harmonic(1.0);
  const Grid g = default_grid(h, -1.5, 1.5, 1024);
  const double T = 2.0 * std::numbers::pi;
  const ClassicalPoint start{1.0, 0.0, 0.0};
  PropagatorConfig c;
  c.dt = T / 5000.0;
  c.snapshot_stride = 250;
  std::vector<ComplexField> fb, st;
  double glauber = 0.0;
  evolve_feedback(h, g, start, c, T, {}, [&](Frame&& f) {
    const double t = f.state.point.t;
    std::vector<double> w(g.n());
    const auto rho = density(f.state.psi);
    for (std::size_t i = 0; i < g.n(); ++i) {
      w[i] = std::sqrt(rho[i] * oracle::glauber_density(g.x(i), t, start.Q, start.P, 1.0, 1.0, 1.0));
    }
    glauber = std::max(glauber, 1.0 - integrate(w, g.dx()));
    fb.push_back(std::move(f.state.psi));
  });
  c.mode = Mode::Static;
  evolve_static(make_coherent_state(h, g, start), c, T, {}, [&](Frame&& f) { st.push_back(std::move(f.state.psi)); });
  double modes = 0.0;
  for (std::size_t k = 0; k < std::min(fb.size(), st.size()); ++k) {
    for (std::size_t i = 0; i < g.n(); ++i) modes = std::max(modes, std::abs(std::norm(fb[k][i]) - std::norm(st[k][i])));
  }
  bool same = fb.size() == st.size();
  for (int k = -30; k <= 30; ++k) same = same && v_class(h, 0.1 * k) == potential_value(h, 0.1 * k);
  return {glauber < 1e-6 && modes < 1e-6 && same,
          fmt("1-overlap vs Glauber=%.3e (<1e-6) feedback-static density gap=%.3e (<1e-6) V_class==V %s", glauber,
              modes, same ? "exact" : "differs")};
}

Verdict unit_sanity() {
  const auto scaled = PotentialModel::morse(1.0, 1.0, 2.0, 2.0);
  auto records = [&](const PotentialModel& model) {
    const double E = 0.2 * model.well_depth();
    const auto [lo, hi] = turning_points(model, E);
    const double T = classical_period(model, E);
    const Grid g = default_grid(model, std::min(lo, -hi), std::max(hi, -lo), 2048);
    PropagatorConfig c;
    c.dt = T / 1e4;
    return evolve_feedback(model, g, {lo, 0.0, 0.0}, c, 0.25 * T).records;
  };
  const auto a = records(morse);
  const auto b = records(scaled);
  if (a.size() != b.size()) return {false, "step counts differ"};
  double diff = 0.0;
  const double dq2a = std::pow(ground_spread(morse), 2), dq2b = std::pow(ground_spread(scaled), 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double pairs[][2] = {
        {a[i].overlap, b[i].overlap},
        {a[i].shape_overlap, b[i].shape_overlap},
        {a[i].hellinger, b[i].hellinger},
        {a[i].dq2 / dq2a, b[i].dq2 / dq2b},
        {a[i].ehrenfest_residual / force_unit(morse), b[i].ehrenfest_residual / force_unit(scaled)},
        {a[i].hjm_residual, b[i].hjm_residual},
    };
    for (const auto& p : pairs) diff = worst(diff, std::abs(p[0] - p[1]));
  }
  return {diff < 1e-8, fmt("max |diag(hbar,m) - diag(2hbar,2m)|=%.3e (<1e-8) over %zu records", diff, a.size())};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"Madelung identity", madelung_identity},
      {"curvature identity", curvature_identity},
      {"linear coefficient and V_class", classical_consistency},
      {"non-spreading", non_spreading},
      {"spreading baseline", spreading_baseline},
      {"Ehrenfest condition", ehrenfest},
      {"static limit", static_limit},
      {"harmonic cross-checks", harmonic_cross_checks},
      {"unit sanity", unit_sanity},
  };
  int failures = 0;
  int n = 0;
  for (const auto& [name, check] : criteria) {
    ++n;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!v.pass) ++failures;
    std::printf("criterion %d [%s]: %s (%s) [%.1f s]\n", n, name, v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", n - failures, n);
  return failures == 0 ? 0 : 1;
}
