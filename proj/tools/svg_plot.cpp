#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "nsas/error.hpp"

namespace nsas::tools {
namespace {

constexpr double kWidth = 640.0, kHeight = 420.0, kLeft = 70.0, kRight = 160.0, kTop = 40.0, kBottom = 50.0;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

void write_loglog_svg(const std::filesystem::path& path, const std::string& title, const std::vector<PlotSeries>& series) {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.y[i] > 0.0) || !std::isfinite(s.y[i])) continue;
      const double lx = std::log10(1.0 + s.x[i]), ly = std::log10(s.y[i]);
      xlo = std::min(xlo, lx);
      xhi = std::max(xhi, lx);
      ylo = std::min(ylo, ly);
      yhi = std::max(yhi, ly);
    }
  if (!(xhi > xlo)) xhi = xlo + 1.0;
  if (!(yhi > ylo)) yhi = ylo + 1.0;
  xlo = std::floor(xlo);
  xhi = std::ceil(xhi);
  ylo = std::floor(ylo);
  yhi = std::ceil(yhi);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double lx) { return kLeft + (lx - xlo) / (xhi - xlo) * pw; };
  auto py = [&](double ly) { return kTop + (yhi - ly) / (yhi - ylo) * ph; };

  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot write " + path.string());
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" font-family=\"sans-serif\" "
                "font-size=\"12\">\n",
                kWidth, kHeight);
  os << buf;
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"22\" font-size=\"14\">%s</text>\n", kLeft, escape(title).c_str());
  os << buf;
  std::snprintf(buf, sizeof buf, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n",
                kLeft, kTop, pw, ph);
  os << buf;
  for (double d = xlo; d <= xhi + 1e-9; d += 1.0) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%g\" x2=\"%.2f\" y2=\"%g\" stroke=\"#ddd\"/><text x=\"%.2f\" y=\"%g\" "
                  "text-anchor=\"middle\">1e%d</text>\n",
                  px(d), kTop, px(d), kTop + ph, px(d), kTop + ph + 18, int(d));
    os << buf;
  }
  for (double d = ylo; d <= yhi + 1e-9; d += 1.0) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%g\" y1=\"%.2f\" x2=\"%g\" y2=\"%.2f\" stroke=\"#ddd\"/><text x=\"%g\" y=\"%.2f\" "
                  "text-anchor=\"end\">1e%d</text>\n",
                  kLeft, py(d), kLeft + pw, py(d), kLeft - 6, py(d) + 4, int(d));
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">1 + t</text>\n", kLeft + pw / 2,
                kHeight - 10);
  os << buf;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    os << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << color << "\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.y[i] > 0.0) || !std::isfinite(s.y[i])) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(std::log10(1.0 + s.x[i])), py(std::log10(s.y[i])));
      os << buf;
    }
    os << "\"/>\n";
    const double ly = kTop + 14.0 + 18.0 * double(k);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\" stroke-width=\"2\"/><text x=\"%g\" "
                  "y=\"%g\">%s</text>\n",
                  kLeft + pw + 10, ly, kLeft + pw + 30, ly, color, kLeft + pw + 36, ly + 4, escape(s.label).c_str());
    os << buf;
  }
  os << "</svg>\n";
}

}  // namespace nsas::tools
