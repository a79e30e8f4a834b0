#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "gcs/models.hpp"
#include "gcs/propagator.hpp"
#include "gcs/tolerances.hpp"

namespace gcs::app {

struct ModelSection {
  std::string kind = "morse";
  double m = 1.0;
  double hbar = 1.0;
  double omega = 1.0;
  double a = 1.0;
  double lambda = 1.0;
};

/// x_min/x_max either both present or both absent (automatic domain).
struct GridSection {
  std::optional<double> x_min;
  std::optional<double> x_max;
  std::size_t n = 2048;
};

struct InitialSection {
  double Q0 = 0.0;
  double P0 = 0.0;
};

/// Duration as T or as a number of classical periods; step as dt or steps.
struct PropagationSection {
  std::optional<double> T;
  std::optional<double> periods;
  std::optional<double> dt;
  std::optional<std::size_t> steps;
  Scheme scheme = Scheme::CrankNicolson;
  Mode mode = Mode::Feedback;
  std::size_t snapshot_stride = 100;
  int stencil_order = 6;
};

struct OutputSection {
  std::string directory = "gcsdyn-out";
  bool emit_fields = false;
  bool emit_plots = true;
};

struct RunConfig {
  ModelSection model;
  GridSection grid;
  InitialSection initial;
  PropagationSection propagation;
  OutputSection output;
  Tolerances tolerances;
};

/// Throws Error(Config) on malformed JSON, unknown keys or wrong types.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

/// Everything a command needs, with defaults and derived quantities filled in.
struct ResolvedRun {
  PotentialModel model;
  Grid grid;
  ClassicalPoint initial;
  PropagatorConfig propagation;
  double duration;
  std::size_t steps;
  double classical_energy;
  double period;
  OutputSection output;
  Tolerances tolerances;
  /// The grid was derived from the orbit rather than given.
  bool grid_auto;
};

/// Checks module preconditions (bounded orbit, grid size, dt > 0, ...) and
/// throws Error(Config) with the offending key otherwise.
ResolvedRun resolve(const RunConfig& config);

/// The resolved run as an explicit config: re-loading it reproduces the run.
nlohmann::json effective_config(const ResolvedRun& run);

std::string to_string(Scheme scheme);
std::string to_string(Mode mode);

}  // namespace gcs::app
