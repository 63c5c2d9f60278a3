#include <qslit/svg.hpp>

#include <qslit/csv.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qslit {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// largest "nice" step (1, 2, 5 times a power of ten) giving <= 8 ticks
double nice_step(double range) {
    const double raw = range / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (const double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) return m * mag;
    return 10.0 * mag;
}

}  // namespace

SvgPlot::SvgPlot(double x_min, double x_max, double y_min, double y_max, int width, int height,
                 std::string title)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), width_(width), height_(height),
      title_(std::move(title)) {
    if (x_max_ <= x_min_) x_max_ = x_min_ + 1;
    if (y_max_ <= y_min_) y_max_ = y_min_ + 1;
}

double SvgPlot::px(double x) const {
    return margin_ + (x - x_min_) / (x_max_ - x_min_) * (width_ - 2 * margin_);
}

double SvgPlot::py(double y) const {
    return height_ - margin_ - (y - y_min_) / (y_max_ - y_min_) * (height_ - 2 * margin_);
}

void SvgPlot::polyline(const std::vector<std::array<double, 2>>& pts, const std::string& color,
                       double stroke_width, const std::string& dash) {
    if (pts.size() < 2) return;
    std::ostringstream os;
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << stroke_width
       << "\"";
    if (!dash.empty()) os << " stroke-dasharray=\"" << dash << "\"";
    os << " points=\"";
    for (const auto& p : pts) os << num(px(p[0])) << ',' << num(py(p[1])) << ' ';
    os << "\"/>\n";
    body_ += os.str();
}

void SvgPlot::band(const std::vector<std::array<double, 2>>& upper,
                   const std::vector<std::array<double, 2>>& lower, const std::string& color,
                   double opacity) {
    if (upper.empty() || lower.empty()) return;
    std::ostringstream os;
    os << "<polygon fill=\"" << color << "\" fill-opacity=\"" << opacity
       << "\" stroke=\"none\" points=\"";
    for (const auto& p : upper) os << num(px(p[0])) << ',' << num(py(p[1])) << ' ';
    for (auto it = lower.rbegin(); it != lower.rend(); ++it)
        os << num(px((*it)[0])) << ',' << num(py((*it)[1])) << ' ';
    os << "\"/>\n";
    body_ += os.str();
}

void SvgPlot::bars(const std::vector<double>& centers, const std::vector<double>& heights,
                   double bar_width, const std::string& color, double opacity) {
    std::ostringstream os;
    const double y0 = py(std::max(0.0, y_min_));
    for (std::size_t i = 0; i < centers.size() && i < heights.size(); ++i) {
        if (heights[i] <= 0) continue;
        const double x0 = px(centers[i] - 0.5 * bar_width);
        const double x1 = px(centers[i] + 0.5 * bar_width);
        const double yt = py(heights[i]);
        os << "<rect x=\"" << num(x0) << "\" y=\"" << num(yt) << "\" width=\"" << num(x1 - x0)
           << "\" height=\"" << num(std::max(0.0, y0 - yt)) << "\" fill=\"" << color
           << "\" fill-opacity=\"" << opacity << "\"/>\n";
    }
    body_ += os.str();
}

void SvgPlot::circles(const std::vector<std::array<double, 2>>& pts, double radius,
                      const std::string& color) {
    std::ostringstream os;
    for (const auto& p : pts)
        os << "<circle cx=\"" << num(px(p[0])) << "\" cy=\"" << num(py(p[1])) << "\" r=\""
           << radius << "\" fill=\"" << color << "\"/>\n";
    body_ += os.str();
}

void SvgPlot::hline(double y, const std::string& color, const std::string& dash) {
    std::ostringstream os;
    os << "<line x1=\"" << num(px(x_min_)) << "\" y1=\"" << num(py(y)) << "\" x2=\""
       << num(px(x_max_)) << "\" y2=\"" << num(py(y)) << "\" stroke=\"" << color
       << "\" stroke-dasharray=\"" << dash << "\"/>\n";
    body_ += os.str();
}

void SvgPlot::vline(double x, const std::string& color, const std::string& dash) {
    std::ostringstream os;
    os << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(py(y_min_)) << "\" x2=\""
       << num(px(x)) << "\" y2=\"" << num(py(y_max_)) << "\" stroke=\"" << color
       << "\" stroke-dasharray=\"" << dash << "\"/>\n";
    body_ += os.str();
}

void SvgPlot::axis_labels(const std::string& x_label, const std::string& y_label) {
    x_label_ = x_label;
    y_label_ = y_label;
}

std::string SvgPlot::str() const {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width_
       << "\" height=\"" << height_ << "\" viewBox=\"0 0 " << width_ << ' ' << height_ << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // frame + ticks under the data
    std::ostringstream frame;
    frame << "<g stroke=\"#444\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"12\">\n";
    frame << "<rect x=\"" << margin_ << "\" y=\"" << margin_ << "\" width=\""
          << width_ - 2 * margin_ << "\" height=\"" << height_ - 2 * margin_
          << "\" fill=\"none\"/>\n";
    const double xs = nice_step(x_max_ - x_min_);
    for (double v = std::ceil(x_min_ / xs) * xs; v <= x_max_ + 1e-9 * xs; v += xs) {
        frame << "<line x1=\"" << num(px(v)) << "\" y1=\"" << num(py(y_min_)) << "\" x2=\""
              << num(px(v)) << "\" y2=\"" << num(py(y_min_) + 5) << "\"/>\n";
        frame << "<text x=\"" << num(px(v)) << "\" y=\"" << num(py(y_min_) + 20)
              << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#222\">" << tick_label(v)
              << "</text>\n";
    }
    const double ys = nice_step(y_max_ - y_min_);
    for (double v = std::ceil(y_min_ / ys) * ys; v <= y_max_ + 1e-9 * ys; v += ys) {
        frame << "<line x1=\"" << num(px(x_min_)) << "\" y1=\"" << num(py(v)) << "\" x2=\""
              << num(px(x_min_) - 5) << "\" y2=\"" << num(py(v)) << "\"/>\n";
        frame << "<text x=\"" << num(px(x_min_) - 8) << "\" y=\"" << num(py(v) + 4)
              << "\" text-anchor=\"end\" stroke=\"none\" fill=\"#222\">" << tick_label(v)
              << "</text>\n";
    }
    if (!title_.empty())
        frame << "<text x=\"" << width_ / 2 << "\" y=\"" << margin_ - 16
              << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#111\" font-size=\"15\">"
              << title_ << "</text>\n";
    if (!x_label_.empty())
        frame << "<text x=\"" << width_ / 2 << "\" y=\"" << height_ - 12
              << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#111\">" << x_label_
              << "</text>\n";
    if (!y_label_.empty())
        frame << "<text x=\"16\" y=\"" << height_ / 2
              << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#111\" transform=\"rotate(-90 16 "
              << height_ / 2 << ")\">" << y_label_ << "</text>\n";
    frame << "</g>\n";

    os << frame.str() << body_ << "</svg>\n";
    return os.str();
}

void SvgPlot::save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    os << str();
}

}  // namespace qslit
