#include "gcs/app/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "gcs/classical.hpp"

namespace gcs::app {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& msg) { fail(ErrorCategory::Config, msg); }

void reject_unknown(const json& j, const std::string& section, const std::set<std::string>& allowed) {
  if (!j.is_object()) config_error("section '" + section + "' must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) config_error("unknown key '" + section + (section.empty() ? "" : ".") + key + "'");
  }
}

double number(const json& j, const std::string& key, const std::string& path) {
  const auto& v = j.at(key);
  if (!v.is_number()) config_error("'" + path + "." + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) config_error("'" + path + "." + key + "' must be finite");
  return d;
}

std::size_t count(const json& j, const std::string& key, const std::string& path) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    config_error("'" + path + "." + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

bool flag(const json& j, const std::string& key, const std::string& path) {
  const auto& v = j.at(key);
  if (!v.is_boolean()) config_error("'" + path + "." + key + "' must be true or false");
  return v.get<bool>();
}

std::string text(const json& j, const std::string& key, const std::string& path) {
  const auto& v = j.at(key);
  if (!v.is_string()) config_error("'" + path + "." + key + "' must be a string");
  return v.get<std::string>();
}

template <class F>
void optional_key(const json& j, const std::string& key, F&& f) {
  if (j.contains(key)) f();
}

}  // namespace

std::string to_string(Scheme scheme) {
  return scheme == Scheme::CrankNicolson ? "crank-nicolson" : "split-step";
}

std::string to_string(Mode mode) { return mode == Mode::Feedback ? "feedback" : "static"; }

RunConfig parse_config(const json& j) {
  RunConfig c;
  reject_unknown(j, "", {"model", "grid", "initial", "propagation", "output", "tolerances"});

  if (j.contains("model")) {
    const auto& s = j["model"];
    reject_unknown(s, "model", {"kind", "m", "hbar", "omega", "a", "lambda"});
    optional_key(s, "kind", [&] { c.model.kind = text(s, "kind", "model"); });
    if (c.model.kind != "morse" && c.model.kind != "harmonic") {
      config_error("model.kind must be 'morse' or 'harmonic', got '" + c.model.kind + "'");
    }
    if (c.model.kind == "morse" && s.contains("omega")) config_error("model.omega is not a Morse parameter");
    if (c.model.kind == "harmonic" && (s.contains("a") || s.contains("lambda"))) {
      config_error("model.a and model.lambda are not harmonic parameters");
    }
    optional_key(s, "m", [&] { c.model.m = number(s, "m", "model"); });
    optional_key(s, "hbar", [&] { c.model.hbar = number(s, "hbar", "model"); });
    optional_key(s, "omega", [&] { c.model.omega = number(s, "omega", "model"); });
    optional_key(s, "a", [&] { c.model.a = number(s, "a", "model"); });
    optional_key(s, "lambda", [&] { c.model.lambda = number(s, "lambda", "model"); });
  }
  if (j.contains("grid")) {
    const auto& s = j["grid"];
    reject_unknown(s, "grid", {"x_min", "x_max", "n"});
    optional_key(s, "x_min", [&] { c.grid.x_min = number(s, "x_min", "grid"); });
    optional_key(s, "x_max", [&] { c.grid.x_max = number(s, "x_max", "grid"); });
    optional_key(s, "n", [&] { c.grid.n = count(s, "n", "grid"); });
    if (c.grid.x_min.has_value() != c.grid.x_max.has_value()) {
      config_error("grid.x_min and grid.x_max must be given together");
    }
  }
  if (j.contains("initial")) {
    const auto& s = j["initial"];
    reject_unknown(s, "initial", {"Q0", "P0"});
    optional_key(s, "Q0", [&] { c.initial.Q0 = number(s, "Q0", "initial"); });
    optional_key(s, "P0", [&] { c.initial.P0 = number(s, "P0", "initial"); });
  }
  if (j.contains("propagation")) {
    const auto& s = j["propagation"];
    reject_unknown(s, "propagation", {"T", "periods", "dt", "steps", "scheme", "mode", "snapshot_stride", "stencil_order"});
    optional_key(s, "T", [&] { c.propagation.T = number(s, "T", "propagation"); });
    optional_key(s, "periods", [&] { c.propagation.periods = number(s, "periods", "propagation"); });
    optional_key(s, "dt", [&] { c.propagation.dt = number(s, "dt", "propagation"); });
    optional_key(s, "steps", [&] { c.propagation.steps = count(s, "steps", "propagation"); });
    if (c.propagation.T && c.propagation.periods) config_error("give propagation.T or propagation.periods, not both");
    if (c.propagation.dt && c.propagation.steps) config_error("give propagation.dt or propagation.steps, not both");
    optional_key(s, "scheme", [&] {
      const auto v = text(s, "scheme", "propagation");
      if (v == "crank-nicolson") {
        c.propagation.scheme = Scheme::CrankNicolson;
      } else if (v == "split-step") {
        c.propagation.scheme = Scheme::SplitStep;
      } else {
        config_error("propagation.scheme must be 'crank-nicolson' or 'split-step'");
      }
    });
    optional_key(s, "mode", [&] {
      const auto v = text(s, "mode", "propagation");
      if (v == "feedback") {
        c.propagation.mode = Mode::Feedback;
      } else if (v == "static") {
        c.propagation.mode = Mode::Static;
      } else {
        config_error("propagation.mode must be 'feedback' or 'static'");
      }
    });
    optional_key(s, "snapshot_stride",
                 [&] { c.propagation.snapshot_stride = count(s, "snapshot_stride", "propagation"); });
    optional_key(s, "stencil_order", [&] {
      c.propagation.stencil_order = static_cast<int>(count(s, "stencil_order", "propagation"));
    });
  }
  if (j.contains("output")) {
    const auto& s = j["output"];
    reject_unknown(s, "output", {"directory", "emit_fields", "emit_plots"});
    optional_key(s, "directory", [&] { c.output.directory = text(s, "directory", "output"); });
    optional_key(s, "emit_fields", [&] { c.output.emit_fields = flag(s, "emit_fields", "output"); });
    optional_key(s, "emit_plots", [&] { c.output.emit_plots = flag(s, "emit_plots", "output"); });
  }
  if (j.contains("tolerances")) {
    const auto& s = j["tolerances"];
    reject_unknown(s, "tolerances",
                   {"normalization", "boundary_mass", "boundary_points", "phase_floor", "max_phase_increment",
                    "curvature_floor", "unitarity", "boundary_alarm"});
    auto& t = c.tolerances;
    optional_key(s, "normalization", [&] { t.normalization = number(s, "normalization", "tolerances"); });
    optional_key(s, "boundary_mass", [&] { t.boundary_mass = number(s, "boundary_mass", "tolerances"); });
    optional_key(s, "boundary_points",
                 [&] { t.boundary_points = static_cast<int>(count(s, "boundary_points", "tolerances")); });
    optional_key(s, "phase_floor", [&] { t.phase_floor = number(s, "phase_floor", "tolerances"); });
    optional_key(s, "max_phase_increment",
                 [&] { t.max_phase_increment = number(s, "max_phase_increment", "tolerances"); });
    optional_key(s, "curvature_floor", [&] { t.curvature_floor = number(s, "curvature_floor", "tolerances"); });
    optional_key(s, "unitarity", [&] { t.unitarity = number(s, "unitarity", "tolerances"); });
    optional_key(s, "boundary_alarm", [&] { t.boundary_alarm = number(s, "boundary_alarm", "tolerances"); });
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot read config file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    config_error("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

namespace {

PotentialModel build_model(const ModelSection& s) {
  if (!(s.m > 0.0)) config_error("model.m must be positive");
  if (!(s.hbar > 0.0)) config_error("model.hbar must be positive");
  if (s.kind == "harmonic") {
    if (!(s.omega > 0.0)) config_error("model.omega must be positive");
    return PotentialModel::harmonic(s.omega, s.m, s.hbar);
  }
  if (!(s.a > 0.0)) config_error("model.a must be positive");
  try {
    return PotentialModel::morse(s.a, s.lambda, s.m, s.hbar);
  } catch (const Error& e) {
    config_error(std::string("model.lambda: ") + e.what());
  }
}

}  // namespace

ResolvedRun resolve(const RunConfig& c) {
  const auto model = build_model(c.model);
  const ClassicalPoint initial{c.initial.Q0, c.initial.P0, 0.0};
  const double E = classical_energy(model, initial.Q, initial.P);
  if (model.kind() == ModelKind::Morse && !(E < model.well_depth())) {
    config_error("initial state has classical energy " + std::to_string(E) + " >= U0 = " +
                 std::to_string(model.well_depth()) + ": the orbit in V_class is unbounded");
  }
  const double period = classical_period(model, E);

  if (c.grid.n < Grid::min_points) config_error("grid.n must be at least " + std::to_string(Grid::min_points));
  std::optional<Grid> grid;
  if (c.grid.x_min) {
    if (!(*c.grid.x_max > *c.grid.x_min)) config_error("grid.x_max must exceed grid.x_min");
    grid.emplace(*c.grid.x_min, *c.grid.x_max, c.grid.n);
  } else {
    // Cover the orbit in V_class and its mirror, which a static run follows.
    const auto [lo, hi] = turning_points(model, E);
    grid.emplace(default_grid(model, std::min(lo, -hi), std::max(hi, -lo), c.grid.n));
  }

  const double duration = c.propagation.T ? *c.propagation.T : c.propagation.periods.value_or(1.0) * period;
  if (!(duration > 0.0)) config_error("propagation duration must be positive");
  std::size_t steps = 0;
  if (c.propagation.steps) {
    steps = *c.propagation.steps;
    if (steps == 0) config_error("propagation.steps must be at least 1");
  } else {
    const double dt = c.propagation.dt.value_or(period / 1e4);
    if (!(dt > 0.0)) config_error("propagation.dt must be positive");
    steps = static_cast<std::size_t>(std::max(1.0, std::ceil(duration / dt - 1e-9)));
  }
  if (steps > 100'000'000) config_error("propagation needs more than 1e8 steps");

  PropagatorConfig p;
  p.dt = duration / static_cast<double>(steps);
  p.scheme = c.propagation.scheme;
  p.mode = c.propagation.mode;
  p.snapshot_stride = c.propagation.snapshot_stride;
  p.stencil_order = c.propagation.stencil_order;
  try {
    validate(p);
  } catch (const Error& e) {
    config_error(std::string("propagation: ") + e.what());
  }
  if (c.tolerances.boundary_points < 1) config_error("tolerances.boundary_points must be at least 1");
  return {model, *grid, initial, p, duration, steps, E, period, c.output, c.tolerances, !c.grid.x_min};
}

json effective_config(const ResolvedRun& r) {
  json model;
  model["kind"] = r.model.kind() == ModelKind::Morse ? "morse" : "harmonic";
  model["m"] = r.model.mass();
  model["hbar"] = r.model.hbar();
  if (r.model.kind() == ModelKind::Morse) {
    model["a"] = r.model.range();
    model["lambda"] = r.model.lambda();
  } else {
    model["omega"] = r.model.omega();
  }
  const auto& t = r.tolerances;
  return json{
      {"model", model},
      {"grid", {{"x_min", r.grid.x_min()}, {"x_max", r.grid.x_max()}, {"n", r.grid.n()}}},
      {"initial", {{"Q0", r.initial.Q}, {"P0", r.initial.P}}},
      {"propagation",
       {{"T", r.duration},
        {"steps", r.steps},
        {"scheme", to_string(r.propagation.scheme)},
        {"mode", to_string(r.propagation.mode)},
        {"snapshot_stride", r.propagation.snapshot_stride},
        {"stencil_order", r.propagation.stencil_order}}},
      {"output",
       {{"directory", r.output.directory}, {"emit_fields", r.output.emit_fields}, {"emit_plots", r.output.emit_plots}}},
      {"tolerances",
       {{"normalization", t.normalization},
        {"boundary_mass", t.boundary_mass},
        {"boundary_points", t.boundary_points},
        {"phase_floor", t.phase_floor},
        {"max_phase_increment", t.max_phase_increment},
        {"curvature_floor", t.curvature_floor},
        {"unitarity", t.unitarity},
        {"boundary_alarm", t.boundary_alarm}}},
  };
}

}  // namespace gcs::app
