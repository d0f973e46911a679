#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace nmq::cli {

struct SvgSeries {
  std::string label;
  std::vector<double> values;
};

/// Minimal line chart; x is shared by all series.
void write_svg_chart(std::ostream& out, const std::string& title, std::span<const double> x,
                     const std::vector<SvgSeries>& series);

}  // namespace nmq::cli
