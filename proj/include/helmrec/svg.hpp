#pragma once

#include <string>
#include <vector>

namespace helmrec {

struct SvgSeries {
    std::string label;
    std::string color;  // any SVG color
    std::vector<double> x;
    std::vector<double> y;
};

// Hand-rolled polyline chart: axes, ticks, legend, nothing else. With
// log_y, nonpositive y values are dropped from the plot.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<SvgSeries>& series, bool log_y);

}  // namespace helmrec
