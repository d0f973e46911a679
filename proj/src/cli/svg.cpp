#include "nmq/cli/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace nmq::cli {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 400;
constexpr double kMargin = 50;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void write_svg_chart(std::ostream& out, const std::string& title, std::span<const double> x,
                     const std::vector<SvgSeries>& series) {
  double x0 = x.empty() ? 0.0 : x.front();
  double x1 = x.empty() ? 1.0 : x.back();
  double y0 = 0.0;
  double y1 = 1.0;
  for (const auto& s : series) {
    for (double v : s.values) {
      y0 = std::min(y0, v);
      y1 = std::max(y1, v);
    }
  }
  if (x1 <= x0) x1 = x0 + 1.0;
  const auto px = [&](double v) { return kMargin + (v - x0) / (x1 - x0) * (kWidth - 2 * kMargin); };
  const auto py = [&](double v) {
    return kHeight - kMargin - (v - y0) / (y1 - y0) * (kHeight - 2 * kMargin);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"25\" text-anchor=\"middle\" font-family=\"sans-serif\">"
      << title << "</text>\n";
  out << "<line x1=\"" << num(px(x0)) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(px(x1))
      << "\" y2=\"" << num(py(0)) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << num(px(x0)) << "\" y1=\"" << num(py(y0)) << "\" x2=\"" << num(px(x0))
      << "\" y2=\"" << num(py(y1)) << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << num(px(x1)) << "\" y=\"" << num(kHeight - 20) << "\" text-anchor=\"end\" "
      << "font-family=\"sans-serif\" font-size=\"12\">t = " << num(x1) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (std::size_t i = 0; i < s.values.size() && i < x.size(); ++i)
      out << num(px(x[i])) << ',' << num(py(s.values[i])) << ' ';
    out << "\"/>\n";
    out << "<text x=\"" << num(kWidth - kMargin) << "\" y=\"" << num(kMargin + 15.0 * k)
        << "\" text-anchor=\"end\" fill=\"" << color << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace nmq::cli
