#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace nsas::tools {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Log-log line plot of positive samples; x is shifted to 1 + t.
void write_loglog_svg(const std::filesystem::path& path, const std::string& title, const std::vector<PlotSeries>& series);

}  // namespace nsas::tools
