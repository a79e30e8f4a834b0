#include <cmath>
#include <fstream>
#include <ostream>

#include "common.hpp"
#include "gcs/classical.hpp"
#include "gcs/diagnostics.hpp"

namespace gcs::app {

int cmd_extract_vclass(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto run = resolve(load_config(config));
    const double dq = ground_spread(run.model);
    constexpr int half = 30;  // 61 samples, 0.1 dq apart
    const double reach = 3.0 * dq;
    Grid grid = run.grid;
    if (run.grid_auto) {
      grid = default_grid(run.model, -reach, reach, grid.n());
    }
    std::vector<double> Q;
    for (int k = -half; k <= half; ++k) Q.push_back(dq * k / 10.0);
    const auto samples = reconstruct_vclass(run.model, grid, Q);

    const auto dir = output_directory(run.output);
    std::filesystem::create_directories(dir);
    std::ofstream csv(dir / "vclass.csv");
    if (!csv) throw std::runtime_error("cannot write " + (dir / "vclass.csv").string());
    csv << "Q,V_class_analytic,V_class_numeric,relative_deviation\n";
    double worst = 0.0;
    for (const auto& s : samples) {
      csv << format_number(s.Q) << ',' << format_number(s.analytic) << ',' << format_number(s.numeric) << ','
          << format_number(s.relative_deviation) << '\n';
      worst = std::max(worst, s.relative_deviation);
    }
    out << "max_relative_deviation=" << format_number(worst) << " samples=" << samples.size()
        << " range=+-3dq output=" << (dir / "vclass.csv").string() << '\n';
    return 0;
  });
}

}  // namespace gcs::app
