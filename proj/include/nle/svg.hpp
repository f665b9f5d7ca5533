#pragma once

#include <string>
#include <vector>

namespace nle {

// Self-contained SVG line plots; no plotting dependency. One series per
// (label, points) entry, linear axes with auto ticks, legend in the corner.
class SvgPlot {
  public:
    SvgPlot(std::string title, std::string x_label, std::string y_label);

    void add_series(std::string label, std::vector<double> xs, std::vector<double> ys);

    std::string render(int width = 720, int height = 480) const;
    void write(const std::string& path, int width = 720, int height = 480) const;

  private:
    struct Series {
        std::string label;
        std::vector<double> xs;
        std::vector<double> ys;
    };
    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
};

}  // namespace nle
