#pragma once

#include <filesystem>
#include <iosfwd>

#include "gcs/app/config.hpp"
#include "gcs/errors.hpp"

namespace gcs::app {

/// Name of the environment variable that overrides output.directory.
inline constexpr const char* output_dir_env = "GCSDYN_OUTPUT_DIR";

/// 2 config, 3 coverage/escape, 4 unitarity, 5 extraction, 6 anything else.
int exit_code(ErrorCategory category);

std::filesystem::path output_directory(const OutputSection& output);

/// Force unit for the Ehrenfest residual: U0*a (Morse), hbar*omega/Delta q (harmonic).
double ehrenfest_unit(const PotentialModel& model);

/// Each command catches module errors, reports them on `err` and returns the
/// exit code.
int cmd_run(const std::filesystem::path& config, std::ostream& out, std::ostream& err);
int cmd_extract_vclass(const std::filesystem::path& config, std::ostream& out, std::ostream& err);
/// One line per check: name,value,threshold,PASS|FAIL. Returns 0 iff all pass.
int cmd_verify(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

}  // namespace gcs::app
