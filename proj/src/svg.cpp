#include "helmrec/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace helmrec {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<SvgSeries>& series, bool log_y) {
    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = min_x, max_y = -min_x;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double yv = s.y[i];
            if (log_y && yv <= 0.0) continue;
            min_x = std::min(min_x, s.x[i]);
            max_x = std::max(max_x, s.x[i]);
            const double ty = log_y ? std::log10(yv) : yv;
            min_y = std::min(min_y, ty);
            max_y = std::max(max_y, ty);
        }
    }
    if (!(min_x <= max_x)) {
        min_x = 0.0;
        max_x = 1.0;
        min_y = 0.0;
        max_y = 1.0;
    }
    if (max_x == min_x) max_x = min_x + 1.0;
    if (max_y == min_y) {
        max_y += 0.5;
        min_y -= 0.5;
    }

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + (x - min_x) / (max_x - min_x) * plot_w; };
    auto py = [&](double y) {
        const double ty = log_y ? std::log10(y) : y;
        return kMarginTop + (1.0 - (ty - min_y) / (max_y - min_y)) * plot_h;
    };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\""
        << " text-anchor=\"middle\">" << title << "</text>\n";

    // axes
    const double x0 = kMarginLeft, y0 = kHeight - kMarginBottom;
    out << "<line x1=\"" << x0 << "\" y1=\"" << kMarginTop << "\" x2=\"" << x0 << "\" y2=\"" << y0
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << kWidth - kMarginRight
        << "\" y2=\"" << y0 << "\" stroke=\"black\"/>\n";

    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double fx = min_x + (max_x - min_x) * i / ticks;
        const double gx = px(fx);
        out << "<line x1=\"" << gx << "\" y1=\"" << y0 << "\" x2=\"" << gx << "\" y2=\"" << y0 + 5
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << gx << "\" y=\"" << y0 + 18
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << num(fx)
            << "</text>\n";

        const double fy = min_y + (max_y - min_y) * i / ticks;
        const double gy = kMarginTop + (1.0 - static_cast<double>(i) / ticks) * plot_h;
        out << "<line x1=\"" << x0 - 5 << "\" y1=\"" << gy << "\" x2=\"" << x0 << "\" y2=\"" << gy
            << "\" stroke=\"black\"/>\n";
        const std::string label = log_y ? ("1e" + num(fy)) : num(fy);
        out << "<text x=\"" << x0 - 8 << "\" y=\"" << gy + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << label
            << "</text>\n";
    }
    out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << x_label
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << kMarginTop + plot_h / 2
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\""
        << " transform=\"rotate(-90 16 " << kMarginTop + plot_h / 2 << ")\">" << y_label
        << "</text>\n";

    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (log_y && s.y[i] <= 0.0) continue;
            out << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
        }
        out << "\"/>\n";
    }

    double legend_y = kMarginTop + 8;
    for (const auto& s : series) {
        const double lx = kWidth - kMarginRight - 150;
        out << "<line x1=\"" << lx << "\" y1=\"" << legend_y - 4 << "\" x2=\"" << lx + 24
            << "\" y2=\"" << legend_y - 4 << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << lx + 30 << "\" y=\"" << legend_y
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
        legend_y += 16;
    }

    out << "</svg>\n";
}

}  // namespace helmrec
