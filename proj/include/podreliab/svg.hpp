#pragma once

// Minimal SVG plotting: one axes box with linear scales, polylines, boxes
// and labels. Every plotted element carries its source numbers in data-*
// attributes so figures can be checked against their CSV files.

#include <string>
#include <vector>

namespace podreliab {

struct AxisRange {
    double min = 0.0;
    double max = 1.0;
};

class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label, AxisRange x, AxisRange y,
            double width = 640.0, double height = 420.0);

    // `dash` is an SVG stroke-dasharray ("" for solid).
    void polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                  const std::string& color, const std::string& dash,
                  const std::vector<std::pair<std::string, std::string>>& data_attrs);

    void hline(double y, const std::string& color, const std::string& dash, const std::string& label);

    // Box-and-whisker at horizontal position x (data units), `half_width` in data units.
    void box(double x, double half_width, double whisker_low, double q1, double median, double q3,
             double whisker_high, const std::string& color,
             const std::vector<std::pair<std::string, std::string>>& data_attrs);

    void legend(const std::string& text, const std::string& color, const std::string& dash);

    void x_ticks(const std::vector<double>& ticks, const std::vector<std::string>& labels = {});
    void y_ticks(const std::vector<double>& ticks);

    std::string str() const;

private:
    double px(double x) const;
    double py(double y) const;

    std::string title_, x_label_, y_label_;
    AxisRange xr_, yr_;
    double width_, height_;
    double left_ = 64.0, right_ = 150.0, top_ = 36.0, bottom_ = 52.0;
    std::vector<std::string> body_;
    std::vector<std::string> legend_;
};

// Escapes &, <, >, and quotes for attribute/text content.
std::string xml_escape(const std::string& text);

// Ticks at "nice" spacing covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target_count = 6);

}  // namespace podreliab
