#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <thread>

#include "common.hpp"
#include "gcs/app/plots.hpp"
#include "gcs/bounded_queue.hpp"
#include "gcs/calculus.hpp"

namespace gcs::app {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  return f;
}

void write_text(const fs::path& path, const std::string& text) { open_out(path) << text; }

constexpr std::size_t plot_snapshots = 5;

// Consumes frames on its own thread so propagation never waits on disk
// beyond the queue capacity.
class Writer {
 public:
  Writer(const ResolvedRun& run, const fs::path& dir)
      : run_(run), dir_(dir), diagnostics_(open_out(dir / "diagnostics.csv")),
        trajectory_(open_out(dir / "trajectory.csv")) {
    diagnostics_ << csv_header() << '\n';
    trajectory_ << "t,Q,P,dPdt,E_cl\n";
    for (std::size_t k = 0; k < plot_snapshots; ++k) {
      targets_.push_back(static_cast<double>(run.steps) * static_cast<double>(k) / (plot_snapshots - 1));
    }
    potentials_.resize(plot_snapshots);
    thread_ = std::thread([this] { loop(); });
  }

  ~Writer() {
    if (thread_.joinable()) {
      queue_.close();
      thread_.join();
    }
  }

  void push(Frame&& frame) { queue_.push(std::move(frame)); }

  /// Drains the queue and rethrows anything the writer thread hit.
  void finish() {
    if (thread_.joinable()) {
      queue_.close();
      thread_.join();
    }
    if (error_) std::rethrow_exception(std::exchange(error_, nullptr));
  }

  struct Snapshot {
    double t = 0.0;
    std::size_t step = 0;
    std::optional<RealField> V;
  };
  const std::vector<Snapshot>& potentials() const { return potentials_; }
  std::size_t frames() const { return frames_; }

 private:
  void loop() {
    try {
      while (auto frame = queue_.pop()) handle(*frame);
    } catch (...) {
      error_ = std::current_exception();
      queue_.close();
    }
  }

  void handle(const Frame& f) {
    const auto& p = f.state.point;
    diagnostics_ << csv_row(f.diagnostics) << '\n';
    trajectory_ << format_number(p.t) << ',' << format_number(p.Q) << ',' << format_number(p.P) << ','
                << format_number(f.potential.dPdt) << ',' << format_number(classical_energy(run_.model, p.Q, p.P))
                << '\n';
    if (run_.output.emit_fields) {
      char name[32];
      std::snprintf(name, sizeof name, "%04zu.csv", frames_);
      const auto dp = density_phase(f.state.psi, run_.model.hbar(), run_.tolerances);
      auto out = open_out(dir_ / "fields" / name);
      out << "x,re_psi,im_psi,rho,S,V\n";
      const auto& g = f.state.psi.grid();
      for (std::size_t i = 0; i < g.n(); ++i) {
        out << format_number(g.x(i)) << ',' << format_number(f.state.psi[i].real()) << ','
            << format_number(f.state.psi[i].imag()) << ',' << format_number(dp.rho[i]) << ','
            << format_number(dp.S[i]) << ',' << format_number(f.potential.V[i]) << '\n';
      }
    }
    for (std::size_t k = 0; k < plot_snapshots; ++k) {
      auto& s = potentials_[k];
      const double d = std::abs(static_cast<double>(f.step) - targets_[k]);
      if (!s.V || d < std::abs(static_cast<double>(s.step) - targets_[k])) {
        s.V = f.potential.V;
        s.step = f.step;
        s.t = p.t;
      }
    }
    ++frames_;
  }

  const ResolvedRun& run_;
  fs::path dir_;
  std::ofstream diagnostics_;
  std::ofstream trajectory_;
  std::vector<double> targets_;
  std::vector<Snapshot> potentials_;
  std::size_t frames_ = 0;
  BoundedQueue<Frame> queue_{64};
  std::exception_ptr error_;
  std::thread thread_;
};

void write_plots(const ResolvedRun& run, const RunResult& result, const Writer& writer, const fs::path& dir) {
  const auto pdir = dir / "plots";
  fs::create_directories(pdir);
  const auto& rec = result.records;
  const double q0 = ground_moments(run.model, run.grid, run.tolerances).q0;
  std::vector<double> t, dq2, overlap, Q, center;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    t.push_back(rec[i].t);
    dq2.push_back(rec[i].dq2);
    overlap.push_back(rec[i].overlap);
    Q.push_back(result.trajectory.points[i].Q);
    center.push_back(rec[i].q_mean - q0);
  }
  constexpr std::size_t bins = 1000;
  auto write_binned = [&](const std::string& name, const std::vector<double>& y) {
    auto out = open_out(pdir / (name + ".csv"));
    out << "t," << name << "_mean," << name << "_min," << name << "_max\n";
    const auto b = bin_series(t, y, bins);
    Series s{name, {}, {}};
    for (const auto& x : b) {
      out << format_number(x.t) << ',' << format_number(x.mean) << ',' << format_number(x.min) << ','
          << format_number(x.max) << '\n';
      s.x.push_back(x.t);
      s.y.push_back(x.mean);
    }
    return s;
  };
  auto s_dq2 = write_binned("dq2", dq2);
  auto s_ov = write_binned("overlap", overlap);
  write_text(pdir / "dq2.svg", svg_chart("Position variance", "t", "dq2", {s_dq2}));
  write_text(pdir / "overlap.svg", svg_chart("Overlap with the translated ground density", "t", "overlap", {s_ov}));

  const auto bq = bin_series(t, Q, bins);
  const auto bc = bin_series(t, center, bins);
  Series sq{"Q (classical)", {}, {}};
  Series sc{"<q> - q0", {}, {}};
  {
    auto out = open_out(pdir / "center.csv");
    out << "t,Q,q_mean_minus_q0\n";
    for (std::size_t i = 0; i < bq.size(); ++i) {
      out << format_number(bq[i].t) << ',' << format_number(bq[i].mean) << ',' << format_number(bc[i].mean) << '\n';
      sq.x.push_back(bq[i].t);
      sq.y.push_back(bq[i].mean);
      sc.x.push_back(bc[i].t);
      sc.y.push_back(bc[i].mean);
    }
  }
  write_text(pdir / "center.svg", svg_chart("Packet center", "t", "position", {sq, sc}));

  // Potential snapshots, thinned to at most ~1000 x samples.
  const auto& g = run.grid;
  const std::size_t stride = std::max<std::size_t>(1, g.n() / 1000);
  std::vector<Series> vs;
  auto out = open_out(pdir / "potential.csv");
  out << "x";
  for (const auto& s : writer.potentials()) {
    if (!s.V) continue;
    char label[48];
    std::snprintf(label, sizeof label, "V_t=%.6g", s.t);
    out << ',' << label;
    vs.push_back({label, {}, {}});
  }
  out << '\n';
  const double cap = 4.0 * run.model.energy_scale();  // keep the walls from flattening the plot
  for (std::size_t i = 0; i < g.n(); i += stride) {
    out << format_number(g.x(i));
    std::size_t k = 0;
    for (const auto& s : writer.potentials()) {
      if (!s.V) continue;
      out << ',' << format_number((*s.V)[i]);
      if (std::abs((*s.V)[i]) <= cap) {
        vs[k].x.push_back(g.x(i));
        vs[k].y.push_back((*s.V)[i]);
      }
      ++k;
    }
    out << '\n';
  }
  write_text(pdir / "potential.svg", svg_chart("V(x,t) snapshots", "x", "V", vs));
}

}  // namespace

int cmd_run(const fs::path& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto run = resolve(load_config(config));
    const auto dir = output_directory(run.output);
    fs::create_directories(dir);
    if (run.output.emit_fields) fs::create_directories(dir / "fields");
    write_text(dir / "config.effective.json", effective_config(run).dump(2) + "\n");

    Writer writer(run, dir);
    const FrameSink sink = [&](Frame&& f) { writer.push(std::move(f)); };
    RunResult result;
    try {
      if (run.propagation.mode == Mode::Feedback) {
        result = evolve_feedback(run.model, run.grid, run.initial, run.propagation, run.duration, run.tolerances, sink);
      } else {
        const auto state = make_coherent_state(run.model, run.grid, run.initial, run.tolerances);
        result = evolve_static(state, run.propagation, run.duration, run.tolerances, sink);
      }
    } catch (...) {
      // The propagation error takes precedence over a writer failure.
      try {
        writer.finish();
      } catch (...) {
      }
      throw;
    }
    writer.finish();
    if (run.output.emit_plots) write_plots(run, result, writer, dir);

    double min_overlap = 1.0;
    double max_drift = 0.0;
    for (const auto& r : result.records) {
      min_overlap = std::min(min_overlap, r.overlap);
      max_drift = std::max(max_drift, std::abs(r.dq2 / result.records.front().dq2 - 1.0));
    }
    out << "mode=" << to_string(run.propagation.mode) << " steps=" << run.steps << " dt=" << format_number(result.dt)
        << " snapshots=" << writer.frames() << " min_overlap=" << format_number(min_overlap)
        << " max_dq2_drift=" << format_number(max_drift) << " output=" << dir.string() << '\n';
    return 0;
  });
}

}  // namespace gcs::app
