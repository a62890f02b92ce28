#include "lpplab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>

namespace lpplab {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

void append_fmt(std::string& out, const char* fmt, ...) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    const int n = vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    if (n > 0) out.append(buf, static_cast<std::size_t>(std::min<int>(n, sizeof buf - 1)));
}

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
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

} // namespace

void SvgPlot::add_series(std::string label, std::vector<double> xs, std::vector<double> ys,
                         bool points) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("SvgPlot: series coordinate sizes differ");
    series_.push_back({std::move(label), std::move(xs), std::move(ys), points});
}

std::string SvgPlot::render(int width, int height) const {
    const double left = 70, right = 24, top = 42, bottom = 52;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    auto tx = [&](double v) { return log_log_ ? std::log10(v) : v; };

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    for (const Series& s : series_) {
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            const double x = tx(s.xs[i]), y = tx(s.ys[i]);
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (!any) {
                xmin = xmax = x;
                ymin = ymax = y;
                any = true;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    }
    if (xmax - xmin < 1e-12) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax - ymin < 1e-12) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double xpad = 0.04 * (xmax - xmin), ypad = 0.06 * (ymax - ymin);
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return left + (tx(x) - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + ph - (tx(y) - ymin) / (ymax - ymin) * ph; };

    std::string out;
    out.reserve(1 << 16);
    append_fmt(out,
               "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
               "viewBox=\"0 0 %d %d\" font-family=\"sans-serif\">\n",
               width, height, width, height);
    append_fmt(out, "<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n", width, height);
    append_fmt(out,
               "<text x=\"%.1f\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">%s</text>\n",
               left + pw / 2, escape_xml(title_).c_str());

    // Frame and ticks.
    append_fmt(out,
               "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
               "stroke=\"#333\"/>\n",
               left, top, pw, ph);
    const int ticks = 5;
    for (int t = 0; t <= ticks; ++t) {
        const double fx = xmin + (xmax - xmin) * t / ticks;
        const double fy = ymin + (ymax - ymin) * t / ticks;
        const double gx = left + pw * t / ticks;
        const double gy = top + ph - ph * t / ticks;
        const double lx = log_log_ ? std::pow(10.0, fx) : fx;
        const double ly = log_log_ ? std::pow(10.0, fy) : fy;
        append_fmt(out,
                   "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ccc\"/>\n",
                   gx, top, gx, top + ph);
        append_fmt(out,
                   "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ccc\"/>\n",
                   left, gy, left + pw, gy);
        append_fmt(out,
                   "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" font-size=\"11\" "
                   "fill=\"#333\">%.4g</text>\n",
                   gx, top + ph + 16, lx);
        append_fmt(out,
                   "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-size=\"11\" "
                   "fill=\"#333\">%.4g</text>\n",
                   left - 6, gy + 4, ly);
    }
    append_fmt(out,
               "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" font-size=\"12\">%s</text>\n",
               left + pw / 2, top + ph + 38.0, escape_xml(x_label_).c_str());
    append_fmt(out,
               "<text x=\"16\" y=\"%.1f\" text-anchor=\"middle\" font-size=\"12\" "
               "transform=\"rotate(-90 16 %.1f)\">%s</text>\n",
               top + ph / 2, top + ph / 2, escape_xml(y_label_).c_str());

    for (std::size_t s = 0; s < series_.size(); ++s) {
        const Series& ser = series_[s];
        const char* color = kPalette[s % kPaletteSize];
        if (ser.xs.size() > 1) {
            out += "<polyline fill=\"none\" stroke=\"";
            out += color;
            out += "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < ser.xs.size(); ++i) {
                const double x = px(ser.xs[i]), y = py(ser.ys[i]);
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                append_fmt(out, "%.2f,%.2f ", x, y);
            }
            out += "\"/>\n";
        }
        if (ser.points || ser.xs.size() == 1) {
            for (std::size_t i = 0; i < ser.xs.size(); ++i) {
                const double x = px(ser.xs[i]), y = py(ser.ys[i]);
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                append_fmt(out, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n", x, y,
                           color);
            }
        }
        append_fmt(out,
                   "<rect x=\"%.1f\" y=\"%.1f\" width=\"14\" height=\"4\" fill=\"%s\"/>\n",
                   left + pw - 150.0, top + 10.0 + 16.0 * s, color);
        append_fmt(out,
                   "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" fill=\"#333\">%s</text>\n",
                   left + pw - 132.0, top + 15.0 + 16.0 * s, escape_xml(ser.label).c_str());
    }
    out += "</svg>\n";
    return out;
}

} // namespace lpplab
