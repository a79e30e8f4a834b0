#include <CLI11.hpp>
#include <iostream>

#include "gcs/app/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generalized coherent state dynamics with potential feedback"};
  app.require_subcommand(1);
  std::string config;
  auto* run = app.add_subcommand("run", "Propagate and write diagnostics, trajectory, fields and plots");
  auto* vclass = app.add_subcommand("extract-vclass", "Reconstruct V_class from the linear coefficient");
  auto* verify = app.add_subcommand("verify", "Run the invariant checks; exit 0 iff all pass");
  for (auto* sub : {run, vclass, verify}) sub->add_option("--config", config, "JSON run configuration")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  if (*run) return gcs::app::cmd_run(config, std::cout, std::cerr);
  if (*vclass) return gcs::app::cmd_extract_vclass(config, std::cout, std::cerr);
  return gcs::app::cmd_verify(config, std::cout, std::cerr);
}
