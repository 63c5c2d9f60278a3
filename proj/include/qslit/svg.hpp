#pragma once

#include <array>
#include <string>
#include <vector>

namespace qslit {

// Minimal SVG 1.1 line-plot writer: data-space polylines, filled bands,
// bars, and framed axes with tick labels. Plots are conveniences; the CSVs
// are the artifacts of record.
class SvgPlot {
public:
    SvgPlot(double x_min, double x_max, double y_min, double y_max, int width = 960,
            int height = 640, std::string title = "");

    void polyline(const std::vector<std::array<double, 2>>& pts, const std::string& color,
                  double stroke_width = 1.5, const std::string& dash = "");
    // closed band: upper boundary followed by the reversed lower boundary
    void band(const std::vector<std::array<double, 2>>& upper,
              const std::vector<std::array<double, 2>>& lower, const std::string& color,
              double opacity = 0.35);
    void bars(const std::vector<double>& centers, const std::vector<double>& heights,
              double bar_width, const std::string& color, double opacity = 0.8);
    void circles(const std::vector<std::array<double, 2>>& pts, double radius,
                 const std::string& color);
    void hline(double y, const std::string& color, const std::string& dash = "4,4");
    void vline(double x, const std::string& color, const std::string& dash = "4,4");
    void axis_labels(const std::string& x_label, const std::string& y_label);

    std::string str() const;
    void save(const std::string& path) const;

private:
    double px(double x) const;
    double py(double y) const;

    double x_min_, x_max_, y_min_, y_max_;
    int width_, height_;
    static constexpr int margin_ = 56;
    std::string body_;
    std::string title_;
    std::string x_label_, y_label_;
};

}  // namespace qslit
