#include <cstdlib>

#include "common.hpp"
#include "gcs/models.hpp"

namespace gcs::app {

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Config:
      return 2;
    case ErrorCategory::Coverage:
    case ErrorCategory::Escape:
      return 3;
    case ErrorCategory::Unitarity:
      return 4;
    case ErrorCategory::Extraction:
      return 5;
    default:
      return 6;
  }
}

std::filesystem::path output_directory(const OutputSection& output) {
  if (const char* env = std::getenv(output_dir_env); env && *env) return env;
  return output.directory;
}

double ehrenfest_unit(const PotentialModel& model) {
  if (model.kind() == ModelKind::Morse) return model.well_depth() * model.range();
  return model.force_scale();
}

}  // namespace gcs::app
