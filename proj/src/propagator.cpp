#include "gcs/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "gcs/calculus.hpp"
#include "spectral.hpp"

namespace gcs {

void validate(const PropagatorConfig& config) {
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) fail(ErrorCategory::Precondition, "dt must be positive");
  if (config.snapshot_stride < 1) fail(ErrorCategory::Precondition, "snapshot_stride must be at least 1");
  if (config.stencil_order != 2 && config.stencil_order != 4 && config.stencil_order != 6) {
    fail(ErrorCategory::Precondition, "stencil_order must be 2, 4 or 6");
  }
}

namespace {

std::vector<double> second_derivative_stencil(int order) {
  switch (order) {
    case 2:
      return {-2.0, 1.0};
    case 4:
      return {-5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0};
    default:
      return {-49.0 / 18.0, 3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0};
  }
}

}  // namespace

struct Stepper::Impl {
  Grid grid;
  double mass;
  double hbar;
  Scheme scheme;
  std::vector<double> stencil;  // c_0..c_b of the centered second difference
  std::vector<cplx> band;       // n x (2b+1), row-major
  std::vector<cplx> work;
  std::vector<double> k2;

  Impl(const Grid& g, double m, double h, Scheme s, int order)
      : grid(g), mass(m), hbar(h), scheme(s), stencil(second_derivative_stencil(order)) {
    if (scheme == Scheme::SplitStep) {
      const auto k = detail::wavenumbers(g.n(), g.dx(), false);
      k2.resize(k.size());
      for (std::size_t i = 0; i < k.size(); ++i) k2[i] = k[i] * k[i];
    }
  }

  ComplexField crank_nicolson(const ComplexField& psi, const RealField& V, double dt) {
    const std::size_t n = grid.n();
    const std::size_t b = stencil.size() - 1;
    const std::size_t w = 2 * b + 1;
    const double c = hbar * hbar / (2.0 * mass * grid.dx() * grid.dx());
    const cplx itau(0.0, dt / (2.0 * hbar));
    // The Cayley form is not invariant under V -> V + const, so the mean
    // potential felt by the packet is split off and its phase applied exactly.
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = std::norm(psi[i]);
      num += r * V[i];
      den += r;
    }
    const double ref = den > 0.0 ? num / den : 0.0;

    // A = I + i tau H and rhs = (I - i tau H) psi, H = -c D2 + V - ref with
    // zero Dirichlet data outside the grid.
    band.resize(n * w);
    work.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      cplx* row = &band[i * w];
      cplx rhs = psi[i];
      for (std::size_t j = 0; j < w; ++j) {
        const std::size_t d = j > b ? j - b : b - j;
        const std::size_t col = i + j;  // column + b
        if (col < b || col - b >= n) {
          row[j] = 0.0;
          continue;
        }
        const double h = -c * stencil[d] + (d == 0 ? V[i] - ref : 0.0);
        row[j] = (d == 0 ? 1.0 : 0.0) + itau * h;
        rhs -= itau * h * psi[col - b];
      }
      work[i] = rhs;
    }

    // I + i tau H has a positive definite Hermitian part, so elimination
    // without pivoting is stable.
    for (std::size_t k = 0; k < n; ++k) {
      const cplx pivot = band[k * w + b];
      if (!(std::abs(pivot) > 0.0) || !std::isfinite(pivot.real()) || !std::isfinite(pivot.imag())) {
        fail(ErrorCategory::Propagation, "banded solve broke down at row " + std::to_string(k));
      }
      const std::size_t last = std::min(n - 1, k + b);
      for (std::size_t i = k + 1; i <= last; ++i) {
        const cplx l = band[i * w + (k + b - i)] / pivot;
        if (l == cplx(0.0)) continue;
        for (std::size_t j = k + 1; j <= last; ++j) band[i * w + (j + b - i)] -= l * band[k * w + (j + b - k)];
        work[i] -= l * work[k];
      }
    }
    std::vector<cplx> out(n);
    for (std::size_t kk = n; kk-- > 0;) {
      cplx s = work[kk];
      const std::size_t last = std::min(n - 1, kk + b);
      for (std::size_t j = kk + 1; j <= last; ++j) s -= band[kk * w + (j + b - kk)] * out[j];
      out[kk] = s / band[kk * w + b];
    }
    const cplx phase = std::polar(1.0, -ref * dt / hbar);
    for (auto& v : out) v *= phase;
    return ComplexField(grid, std::move(out));
  }

  ComplexField split_step(const ComplexField& psi, const RealField& V, double dt) {
    const std::size_t n = grid.n();
    auto& plan = detail::fft_plan(n);
    auto buf = plan.buffer();
    for (std::size_t i = 0; i < n; ++i) buf[i] = psi[i] * std::polar(1.0, -0.5 * V[i] * dt / hbar);
    plan.forward();
    const double kin = hbar * dt / (2.0 * mass);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] *= std::polar(inv_n, -kin * k2[i]);
    plan.backward();
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = buf[i] * std::polar(1.0, -0.5 * V[i] * dt / hbar);
    return ComplexField(grid, std::move(out));
  }
};

Stepper::Stepper(const Grid& grid, double mass, double hbar, Scheme scheme, int stencil_order) {
  if (!(mass > 0.0) || !(hbar > 0.0)) fail(ErrorCategory::Precondition, "mass and hbar must be positive");
  PropagatorConfig probe;
  probe.stencil_order = stencil_order;
  validate(probe);
  impl_ = std::make_unique<Impl>(grid, mass, hbar, scheme, stencil_order);
}

Stepper::~Stepper() = default;
Stepper::Stepper(Stepper&&) noexcept = default;
Stepper& Stepper::operator=(Stepper&&) noexcept = default;

ComplexField Stepper::step(const ComplexField& psi, const RealField& V, double dt) {
  require_same_grid(psi.grid(), impl_->grid, "step: psi");
  require_same_grid(V.grid(), impl_->grid, "step: V");
  if (!std::isfinite(dt) || dt == 0.0) fail(ErrorCategory::Precondition, "dt must be finite and nonzero");
  return impl_->scheme == Scheme::CrankNicolson ? impl_->crank_nicolson(psi, V, dt) : impl_->split_step(psi, V, dt);
}

ComplexField step(const ComplexField& psi, const RealField& V, double dt, Scheme scheme, double mass, double hbar,
                  int stencil_order) {
  return Stepper(psi.grid(), mass, hbar, scheme, stencil_order).step(psi, V, dt);
}

namespace {

std::size_t step_count(double duration, double dt) {
  if (!(duration > 0.0) || !std::isfinite(duration)) fail(ErrorCategory::Precondition, "duration must be positive");
  const double s = std::ceil(duration / dt - 1e-9);
  if (s > 1e8) fail(ErrorCategory::Precondition, "too many steps");
  return std::max<std::size_t>(1, static_cast<std::size_t>(s));
}

// Throws Coverage before any propagation when the translated ground state
// cannot be represented at the extremes of the trajectory.
void check_coverage(const PotentialModel& model, const Grid& grid, const Trajectory& traj, const Tolerances& tol) {
  const auto [lo, hi] = std::minmax_element(traj.points.begin(), traj.points.end(),
                                            [](const auto& a, const auto& b) { return a.Q < b.Q; });
  shifted_ground_state(model, grid, lo->Q, tol);
  shifted_ground_state(model, grid, hi->Q, tol);
}

struct Loop {
  const PotentialModel& model;
  const Grid& grid;
  const PropagatorConfig& config;
  const Tolerances& tol;
  const FrameSink& sink;
  const Trajectory& traj;
  Stepper stepper;
  Recorder recorder;
  // Static runs of anharmonic wells lose unbound mass through the edges by
  // design; only the feedback loop treats that as an alarm.
  bool alarms = true;

  Loop(const PotentialModel& m, const Grid& g, const PropagatorConfig& c, const Tolerances& t, const FrameSink& s,
       const Trajectory& tr)
      : model(m),
        grid(g),
        config(c),
        tol(t),
        sink(s),
        traj(tr),
        stepper(g, m.mass(), m.hbar(), c.scheme, c.stencil_order),
        recorder(m, g, t) {}

  // mid(i): potential driving step i -> i+1. snap(i): potential at point i.
  template <class Mid, class Snap>
  std::vector<DiagnosticsRecord> run(ComplexField psi, TranslationMethod translation, Mid&& mid, Snap&& snap) {
    const std::size_t steps = traj.points.size() - 1;
    const double dt = traj.dt;
    std::vector<DiagnosticsRecord> records;
    records.reserve(steps + 1);
    double norm0 = 0.0;

    // d_t S at step i comes from the centred difference of the neighbouring
    // propagated states; the two ends borrow one extra step with the
    // snapshot potential.
    auto observe = [&](std::size_t i, const ComplexField& state, const ComplexField* before,
                       const ComplexField* after) {
      PotentialSnapshot pot = snap(i);
      const auto behind = before ? *before : stepper.step(state, pot.V, -dt);
      const auto ahead = after ? *after : stepper.step(state, pot.V, dt);
      const auto S_t = phase_rate(behind, ahead, 2.0 * dt, model.hbar());
      auto rec = recorder(state, traj.points[i], pot, &S_t);
      if (i == 0) norm0 = rec.norm;
      if (alarms && std::abs(rec.norm - norm0) > tol.unitarity) {
        std::ostringstream os;
        os << "norm drifted by " << rec.norm - norm0 << " at step " << i << " (t = " << rec.t << ")";
        fail(ErrorCategory::Unitarity, os.str());
      }
      if (alarms && rec.boundary_mass > tol.boundary_alarm) {
        std::ostringstream os;
        os << "boundary mass " << rec.boundary_mass << " at step " << i << " (t = " << rec.t
           << "): the packet reached the grid edge";
        fail(ErrorCategory::Coverage, os.str());
      }
      records.push_back(rec);
      if (sink && (i % config.snapshot_stride == 0 || i == steps)) {
        sink(Frame{i, GCSState{state, traj.points[i], model, translation}, std::move(pot), rec});
      }
    };

    std::optional<ComplexField> prev;
    for (std::size_t i = 0; i < steps; ++i) {
      auto next = stepper.step(psi, mid(i), dt);
      observe(i, psi, prev ? &*prev : nullptr, &next);
      prev = std::move(psi);
      psi = std::move(next);
    }
    observe(steps, psi, prev ? &*prev : nullptr, nullptr);
    return records;
  }
};

}  // namespace

RunResult evolve_feedback(const PotentialModel& model, const Grid& grid, const ClassicalPoint& initial,
                          const PropagatorConfig& config, double duration, const Tolerances& tol,
                          const FrameSink& sink) {
  validate(config);
  require_finite(initial);
  const std::size_t steps = step_count(duration, config.dt);
  const double dt = duration / static_cast<double>(steps);

  RunResult result;
  result.dt = dt;
  result.trajectory = integrate_trajectory(model, initial.Q, initial.P, dt, steps, QInterval{grid.x_min(), grid.x_max()});
  for (auto& p : result.trajectory.points) p.t += initial.t;
  const auto& traj = result.trajectory;
  check_coverage(model, grid, traj, tol);

  const auto state0 = make_coherent_state(model, grid, traj.points[0], tol);
  const double m = model.mass();
  auto mid = [&](std::size_t i) {
    const auto& a = traj.points[i];
    const auto& b = traj.points[i + 1];
    const ClassicalPoint c{0.5 * (a.Q + b.Q), m * (b.Q - a.Q) / dt, a.t + 0.5 * dt};
    return assemble_potential(model, grid, c, classical_force(model, c.Q), CurvatureRoute::Analytic, tol).V;
  };
  auto snap = [&](std::size_t i) {
    return assemble_potential(model, grid, traj.points[i], traj.forces[i], CurvatureRoute::Analytic, tol);
  };
  Loop loop(model, grid, config, tol, sink, traj);
  result.records = loop.run(state0.psi, state0.translation, mid, snap);
  return result;
}

RunResult evolve_static(const GCSState& initial, const PropagatorConfig& config, double duration,
                        const Tolerances& tol, const FrameSink& sink) {
  validate(config);
  require_finite(initial.point);
  const auto& model = initial.model;
  const Grid& grid = initial.psi.grid();
  const std::size_t steps = step_count(duration, config.dt);
  const double dt = duration / static_cast<double>(steps);

  RunResult result;
  result.dt = dt;
  result.trajectory = integrate_trajectory(model, initial.point.Q, initial.point.P, dt, steps);
  for (auto& p : result.trajectory.points) p.t += initial.point.t;
  const auto& traj = result.trajectory;

  const auto V = RealField::sample(grid, [&](double x) { return potential_value(model, x); });
  auto mid = [&](std::size_t) -> const RealField& { return V; };
  auto snap = [&](std::size_t i) {
    const auto& p = traj.points[i];
    return PotentialSnapshot{V, p, traj.forces[i], p.P / model.mass()};
  };
  Loop loop(model, grid, config, tol, sink, traj);
  loop.alarms = false;
  result.records = loop.run(initial.psi, initial.translation, mid, snap);
  return result;
}

}  // namespace gcs
