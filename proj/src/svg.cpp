#include "podreliab/svg.hpp"

#include <cmath>
#include <sstream>

#include "podreliab/text.hpp"

namespace podreliab {

namespace {

std::string px_str(double v) { return format_fixed(v, 2); }

std::string attrs_str(const std::vector<std::pair<std::string, std::string>>& attrs) {
    std::string out;
    for (const auto& [k, v] : attrs) out += " data-" + k + "=\"" + xml_escape(v) + "\"";
    return out;
}

}  // namespace

std::string xml_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::vector<double> nice_ticks(double lo, double hi, int target_count) {
    std::vector<double> ticks;
    if (!(hi > lo)) {
        ticks.push_back(lo);
        return ticks;
    }
    const double raw = (hi - lo) / std::max(target_count, 1);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double f : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        step = f * mag;
        if (step >= raw) break;
    }
    for (long long k = static_cast<long long>(std::ceil(lo / step - 1e-9));; ++k) {
        const double v = static_cast<double>(k) * step;
        if (v > hi + 1e-9 * step) break;
        ticks.push_back(std::fabs(v) < 1e-12 * step ? 0.0 : v);
    }
    return ticks;
}

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label, AxisRange x,
                 AxisRange y, double width, double height)
    : title_(std::move(title)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)),
      xr_(x),
      yr_(y),
      width_(width),
      height_(height) {
    if (!(xr_.max > xr_.min)) xr_.max = xr_.min + 1.0;
    if (!(yr_.max > yr_.min)) yr_.max = yr_.min + 1.0;
}

double SvgPlot::px(double x) const {
    return left_ + (x - xr_.min) / (xr_.max - xr_.min) * (width_ - left_ - right_);
}

double SvgPlot::py(double y) const {
    return height_ - bottom_ - (y - yr_.min) / (yr_.max - yr_.min) * (height_ - top_ - bottom_);
}

void SvgPlot::polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                       const std::string& color, const std::string& dash,
                       const std::vector<std::pair<std::string, std::string>>& data_attrs) {
    std::string pts, dx, dy;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) {
            pts += ' ';
            dx += ' ';
            dy += ' ';
        }
        pts += px_str(px(xs[i])) + "," + px_str(py(ys[i]));
        dx += format_double(xs[i]);
        dy += format_double(ys[i]);
    }
    std::string el = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.8\"";
    if (!dash.empty()) el += " stroke-dasharray=\"" + dash + "\"";
    el += attrs_str(data_attrs) + " data-x=\"" + dx + "\" data-y=\"" + dy + "\" points=\"" + pts + "\"/>";
    body_.push_back(std::move(el));
}

void SvgPlot::hline(double y, const std::string& color, const std::string& dash, const std::string& label) {
    std::string el = "<line x1=\"" + px_str(px(xr_.min)) + "\" y1=\"" + px_str(py(y)) + "\" x2=\"" +
                     px_str(px(xr_.max)) + "\" y2=\"" + px_str(py(y)) + "\" stroke=\"" + color +
                     "\" stroke-width=\"1\"";
    if (!dash.empty()) el += " stroke-dasharray=\"" + dash + "\"";
    el += " data-y=\"" + format_double(y) + "\"/>";
    body_.push_back(std::move(el));
    if (!label.empty()) {
        body_.push_back("<text x=\"" + px_str(px(xr_.max) + 4) + "\" y=\"" + px_str(py(y) + 4) +
                        "\" font-size=\"11\">" + xml_escape(label) + "</text>");
    }
}

void SvgPlot::box(double x, double half_width, double whisker_low, double q1, double median,
                  double q3, double whisker_high, const std::string& color,
                  const std::vector<std::pair<std::string, std::string>>& data_attrs) {
    const double x0 = px(x - half_width);
    const double x1 = px(x + half_width);
    const double xc = px(x);
    std::ostringstream g;
    g << "<g class=\"box\"" << attrs_str(data_attrs) << " stroke=\"" << color << "\" fill=\"none\">";
    g << "<line x1=\"" << px_str(xc) << "\" y1=\"" << px_str(py(whisker_low)) << "\" x2=\""
      << px_str(xc) << "\" y2=\"" << px_str(py(q1)) << "\"/>";
    g << "<line x1=\"" << px_str(xc) << "\" y1=\"" << px_str(py(q3)) << "\" x2=\"" << px_str(xc)
      << "\" y2=\"" << px_str(py(whisker_high)) << "\"/>";
    g << "<rect x=\"" << px_str(x0) << "\" y=\"" << px_str(py(q3)) << "\" width=\""
      << px_str(x1 - x0) << "\" height=\"" << px_str(py(q1) - py(q3)) << "\"/>";
    g << "<line x1=\"" << px_str(x0) << "\" y1=\"" << px_str(py(median)) << "\" x2=\""
      << px_str(x1) << "\" y2=\"" << px_str(py(median)) << "\" stroke-width=\"2\"/>";
    const double cap = (x1 - x0) / 4.0;
    for (double w : {whisker_low, whisker_high}) {
        g << "<line x1=\"" << px_str(xc - cap) << "\" y1=\"" << px_str(py(w)) << "\" x2=\""
          << px_str(xc + cap) << "\" y2=\"" << px_str(py(w)) << "\"/>";
    }
    g << "</g>";
    body_.push_back(g.str());
}

void SvgPlot::legend(const std::string& text, const std::string& color, const std::string& dash) {
    const double y = top_ + 14.0 * static_cast<double>(legend_.size());
    const double x = width_ - right_ + 12.0;
    std::string el = "<line x1=\"" + px_str(x) + "\" y1=\"" + px_str(y) + "\" x2=\"" +
                     px_str(x + 22) + "\" y2=\"" + px_str(y) + "\" stroke=\"" + color +
                     "\" stroke-width=\"1.8\"";
    if (!dash.empty()) el += " stroke-dasharray=\"" + dash + "\"";
    el += "/><text x=\"" + px_str(x + 26) + "\" y=\"" + px_str(y + 4) + "\" font-size=\"10\">" +
          xml_escape(text) + "</text>";
    legend_.push_back(std::move(el));
}

void SvgPlot::x_ticks(const std::vector<double>& ticks, const std::vector<std::string>& labels) {
    for (std::size_t i = 0; i < ticks.size(); ++i) {
        const double x = px(ticks[i]);
        const double y = height_ - bottom_;
        const std::string text = i < labels.size() ? labels[i] : format_trimmed(ticks[i], 3);
        body_.push_back("<line x1=\"" + px_str(x) + "\" y1=\"" + px_str(y) + "\" x2=\"" + px_str(x) +
                        "\" y2=\"" + px_str(y + 4) + "\" stroke=\"black\"/>");
        body_.push_back("<text x=\"" + px_str(x) + "\" y=\"" + px_str(y + 16) +
                        "\" font-size=\"11\" text-anchor=\"middle\">" + xml_escape(text) + "</text>");
    }
}

void SvgPlot::y_ticks(const std::vector<double>& ticks) {
    for (double t : ticks) {
        const double y = py(t);
        body_.push_back("<line x1=\"" + px_str(left_ - 4) + "\" y1=\"" + px_str(y) + "\" x2=\"" +
                        px_str(left_) + "\" y2=\"" + px_str(y) + "\" stroke=\"black\"/>");
        body_.push_back("<text x=\"" + px_str(left_ - 7) + "\" y=\"" + px_str(y + 4) +
                        "\" font-size=\"11\" text-anchor=\"end\">" + format_trimmed(t, 3) + "</text>");
    }
}

std::string SvgPlot::str() const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px_str(width_) << "\" height=\""
        << px_str(height_) << "\" viewBox=\"0 0 " << px_str(width_) << ' ' << px_str(height_)
        << "\" font-family=\"sans-serif\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << px_str(width_ / 2) << "\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">"
        << xml_escape(title_) << "</text>\n";
    out << "<rect x=\"" << px_str(left_) << "\" y=\"" << px_str(top_) << "\" width=\""
        << px_str(width_ - left_ - right_) << "\" height=\"" << px_str(height_ - top_ - bottom_)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px_str(left_ + (width_ - left_ - right_) / 2) << "\" y=\""
        << px_str(height_ - 12) << "\" font-size=\"12\" text-anchor=\"middle\">"
        << xml_escape(x_label_) << "</text>\n";
    out << "<text transform=\"translate(16," << px_str(top_ + (height_ - top_ - bottom_) / 2)
        << ") rotate(-90)\" font-size=\"12\" text-anchor=\"middle\">" << xml_escape(y_label_)
        << "</text>\n";
    for (const auto& el : body_) out << el << '\n';
    for (const auto& el : legend_) out << el << '\n';
    out << "</svg>\n";
    return out.str();
}

}  // namespace podreliab
