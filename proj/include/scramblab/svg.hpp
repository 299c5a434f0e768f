#pragma once

#include <string>
#include <vector>

namespace scramblab::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;  // analytic bounds are drawn dashed
};

// Self-contained SVG line chart: axes in subset size vs bits, one legend
// entry per series, no timestamps or external references.
std::string line_chart(const std::vector<Series>& series, const std::string& x_label,
                       const std::string& y_label);

}  // namespace scramblab::svg
