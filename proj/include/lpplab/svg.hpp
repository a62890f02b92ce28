#pragma once

#include <string>
#include <vector>

namespace lpplab {

// Minimal native SVG line/scatter chart. Series share one coordinate frame;
// log-log mode transforms both axes by log10 and requires positive data.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void set_log_log(bool on) { log_log_ = on; }

    // points=true draws markers at each vertex in addition to the polyline.
    void add_series(std::string label, std::vector<double> xs, std::vector<double> ys,
                    bool points = false);

    std::string render(int width = 720, int height = 480) const;

private:
    struct Series {
        std::string label;
        std::vector<double> xs, ys;
        bool points = false;
    };
    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
    bool log_log_ = false;
};

} // namespace lpplab
