#pragma once

#include <string>
#include <vector>

namespace gcs::app {

struct Bin {
  double t;
  double mean;
  double min;
  double max;
};

/// Consecutive samples grouped into at most `max_bins` bins.
std::vector<Bin> bin_series(const std::vector<double>& t, const std::vector<double>& y, std::size_t max_bins);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Self-contained SVG line chart.
std::string svg_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series);

}  // namespace gcs::app
