#include "headway/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace headway {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 540.0;
constexpr double kMarginLeft = 62.0;
constexpr double kMarginRight = 18.0;
constexpr double kMarginTop = 34.0;
constexpr double kMarginBottom = 48.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// Ticks at a 1/2/5 decade step covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi) {
    const double span = hi - lo;
    if (!(span > 0.0)) return {lo};
    const double rough = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(rough)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * m >= rough) {
            step = mag * m;
            break;
        }
    }
    std::vector<double> ticks;
    const double first = std::ceil(lo / step) * step;
    for (double t = first; t <= hi + step * 1e-9; t += step) {
        ticks.push_back(t);
    }
    return ticks;
}

} // namespace

SvgChart::SvgChart(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)),
      y_label_(std::move(y_label)) {}

void SvgChart::add_line(std::string name, std::vector<double> values,
                        std::string color) {
    lines_.push_back({std::move(name), std::move(values), std::move(color)});
}

void SvgChart::add_points(std::string name,
                          std::vector<std::pair<std::size_t, double>> points,
                          std::string color) {
    points_.push_back({std::move(name), std::move(points), std::move(color)});
}

std::string SvgChart::render() const {
    std::size_t max_index = 0;
    double y_min = 0.0, y_max = 1.0;
    bool any = false;
    auto consider = [&](std::size_t idx, double v) {
        max_index = std::max(max_index, idx);
        if (!any) {
            y_min = y_max = v;
            any = true;
        } else {
            y_min = std::min(y_min, v);
            y_max = std::max(y_max, v);
        }
    };
    for (const auto& s : lines_) {
        for (std::size_t i = 0; i < s.values.size(); ++i) consider(i, s.values[i]);
    }
    for (const auto& s : points_) {
        for (const auto& [i, v] : s.points) consider(i, v);
    }
    if (!any) {
        y_min = 0.0;
        y_max = 1.0;
    }
    if (y_max == y_min) y_max = y_min + 1.0;
    // A little headroom, and distances never go negative.
    const double pad = 0.05 * (y_max - y_min);
    y_min = std::max(0.0, y_min - pad);
    y_max += pad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const double x_span = max_index == 0 ? 1.0 : static_cast<double>(max_index);
    auto sx = [&](double i) { return kMarginLeft + plot_w * i / x_span; };
    auto sy = [&](double v) {
        return kMarginTop + plot_h * (1.0 - (v - y_min) / (y_max - y_min));
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
           "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) +
           " " + fmt(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"20\" text-anchor=\"middle\""
           " font-family=\"sans-serif\" font-size=\"15\">" + title_ +
           "</text>\n";

    for (double t : nice_ticks(y_min, y_max)) {
        const double y = sy(t);
        svg += "<line x1=\"" + fmt(kMarginLeft) + "\" y1=\"" + fmt(y) +
               "\" x2=\"" + fmt(kWidth - kMarginRight) + "\" y2=\"" + fmt(y) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt(kMarginLeft - 8) + "\" y=\"" + fmt(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\""
               " font-size=\"11\">" + fmt(t) + "</text>\n";
    }
    for (double t : nice_ticks(0.0, x_span)) {
        const double x = sx(t);
        svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kMarginTop) +
               "\" x2=\"" + fmt(x) + "\" y2=\"" +
               fmt(kHeight - kMarginBottom) +
               "\" stroke=\"#eeeeee\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt(x) + "\" y=\"" +
               fmt(kHeight - kMarginBottom + 16) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\""
               " font-size=\"11\">" + fmt(t) + "</text>\n";
    }
    svg += "<text x=\"" + fmt(kMarginLeft + plot_w / 2) + "\" y=\"" +
           fmt(kHeight - 10) + "\" text-anchor=\"middle\""
           " font-family=\"sans-serif\" font-size=\"12\">" + x_label_ +
           "</text>\n";
    svg += "<text x=\"16\" y=\"" + fmt(kMarginTop + plot_h / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\""
           " font-size=\"12\" transform=\"rotate(-90 16 " +
           fmt(kMarginTop + plot_h / 2) + ")\">" + y_label_ + "</text>\n";

    for (const auto& s : lines_) {
        if (s.values.empty()) continue;
        std::string d = "M " + fmt(sx(0)) + " " + fmt(sy(s.values[0]));
        for (std::size_t i = 1; i < s.values.size(); ++i) {
            d += " L " + fmt(sx(static_cast<double>(i))) + " " +
                 fmt(sy(s.values[i]));
        }
        svg += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + s.color +
               "\" stroke-width=\"1.5\"/>\n";
    }
    for (const auto& s : points_) {
        for (const auto& [i, v] : s.points) {
            svg += "<circle cx=\"" + fmt(sx(static_cast<double>(i))) +
                   "\" cy=\"" + fmt(sy(v)) + "\" r=\"2.50\" fill=\"" +
                   s.color + "\"/>\n";
        }
    }

    // Legend, top right.
    double ly = kMarginTop + 6.0;
    auto legend_entry = [&](const std::string& name, const std::string& color) {
        const double lx = kWidth - kMarginRight - 150.0;
        svg += "<rect x=\"" + fmt(lx) + "\" y=\"" + fmt(ly) +
               "\" width=\"10.00\" height=\"10.00\" fill=\"" + color +
               "\"/>\n";
        svg += "<text x=\"" + fmt(lx + 16) + "\" y=\"" + fmt(ly + 9) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + name +
               "</text>\n";
        ly += 16.0;
    };
    for (const auto& s : lines_) legend_entry(s.name, s.color);
    for (const auto& s : points_) legend_entry(s.name, s.color);

    svg += "</svg>\n";
    return svg;
}

} // namespace headway
