#pragma once

#include <optional>
#include <string>
#include <vector>

namespace headway {

/// Minimal deterministic SVG line chart: sample index on x, meters on y.
/// All coordinates are emitted at fixed precision so identical inputs give
/// byte-identical documents.
class SvgChart {
public:
    SvgChart(std::string title, std::string x_label, std::string y_label);

    /// A connected polyline over all samples.
    void add_line(std::string name, std::vector<double> values,
                  std::string color);

    /// Markers at (index, value) points; gaps are simply absent.
    void add_points(std::string name,
                    std::vector<std::pair<std::size_t, double>> points,
                    std::string color);

    std::string render() const;

private:
    struct LineSeries {
        std::string name;
        std::vector<double> values;
        std::string color;
    };
    struct PointSeries {
        std::string name;
        std::vector<std::pair<std::size_t, double>> points;
        std::string color;
    };

    std::string title_, x_label_, y_label_;
    std::vector<LineSeries> lines_;
    std::vector<PointSeries> points_;
};

} // namespace headway
