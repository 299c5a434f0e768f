#include "scramblab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace scramblab::svg {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

}  // namespace

std::string line_chart(const std::vector<Series>& series, const std::string& x_label,
                       const std::string& y_label) {
  if (series.empty()) throw std::invalid_argument("no series to plot");
  const double width = 640, height = 440;
  const double ml = 64, mr = 16, mt = 20, mb = 48;

  double xmin = 1e300, xmax = -1e300, ymin = 0.0, ymax = -1e300;
  for (const auto& s : series) {
    for (double v : s.x) {
      xmin = std::min(xmin, v);
      xmax = std::max(xmax, v);
    }
    for (double v : s.y) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  ymax *= 1.05;

  const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
  const auto py = [&](double y) {
    return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << py(ymin) << "\" x2=\"" << width - mr << "\" y2=\""
      << py(ymin) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << py(ymin) << "\" x2=\"" << ml << "\" y2=\"" << mt
      << "\" stroke=\"black\"/>\n";

  const int x_ticks = std::min<int>(12, static_cast<int>(std::lround(xmax - xmin)));
  for (int t = 0; t <= x_ticks; ++t) {
    const double x = xmin + (xmax - xmin) * t / std::max(1, x_ticks);
    out << "<line x1=\"" << px(x) << "\" y1=\"" << py(ymin) << "\" x2=\"" << px(x) << "\" y2=\""
        << py(ymin) + 4 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px(x) << "\" y=\"" << py(ymin) + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(x) << "</text>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    const double y = ymin + (ymax - ymin) * t / 4;
    out << "<line x1=\"" << ml - 4 << "\" y1=\"" << py(y) << "\" x2=\"" << ml << "\" y2=\""
        << py(y) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << py(y) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(y) << "</text>\n";
  }
  out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 10
      << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"14\" y=\"" << (mt + height - mb) / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << (mt + height - mb) / 2 << ")\">" << y_label << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (s.dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      out << fmt(px(s.x[k])) << ',' << fmt(py(s.y[k])) << ' ';
    }
    out << "\"/>\n";
    const double ly = mt + 16 * static_cast<double>(i) + 8;
    out << "<line x1=\"" << ml + 10 << "\" y1=\"" << ly << "\" x2=\"" << ml + 34 << "\" y2=\""
        << ly << "\" stroke=\"" << color << "\" stroke-width=\"1.5\""
        << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
    out << "<text x=\"" << ml + 40 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << s.label
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace scramblab::svg
