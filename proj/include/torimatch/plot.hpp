#pragma once

// SVG rendering of failure-rate curves: one polyline per (family, size,
// decoder, sector) series, with 95% interval error bars and labeled axes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "torimatch/analysis.hpp"

namespace torimatch {

struct PlotOptions {
    int width = 860;
    int height = 560;
    std::string title;
};

namespace detail {

inline std::string xml_escape(const std::string &text) {
    std::string out;
    out.reserve(text.size());
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

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

}  // namespace detail

inline void write_curve_svg(std::ostream &out, const std::vector<CurvePoint> &points,
                            const PlotOptions &options = {}) {
    if (points.empty()) throw std::invalid_argument("write_curve_svg: no data points");

    using SeriesKey = std::tuple<std::string, int, std::string, std::string>;
    std::map<SeriesKey, std::vector<const CurvePoint *>> series;
    double x_min = points.front().p, x_max = points.front().p;
    double y_max = 0.0;
    for (const CurvePoint &c : points) {
        series[{c.family, c.size, c.decoder, c.sector}].push_back(&c);
        x_min = std::min(x_min, c.p);
        x_max = std::max(x_max, c.p);
        y_max = std::max({y_max, c.rate, c.ci_high});
    }
    for (auto &[key, pts] : series)
        std::sort(pts.begin(), pts.end(),
                  [](const CurvePoint *a, const CurvePoint *b) { return a->p < b->p; });

    if (x_min == x_max) {
        double pad = std::max(0.01, std::abs(x_min) * 0.1);
        x_min -= pad;
        x_max += pad;
    }
    if (y_max <= 0.0) y_max = 1.0;
    y_max *= 1.05;

    const double w = options.width, h = options.height;
    const double left = 70.0, right = w - 210.0, top = 40.0, bottom = h - 60.0;
    auto sx = [&](double p) { return left + (p - x_min) / (x_max - x_min) * (right - left); };
    auto sy = [&](double r) { return bottom - r / y_max * (bottom - top); };

    static const char *const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                           "#9467bd", "#8c564b", "#17becf", "#7f7f7f",
                                           "#bcbd22", "#e377c2"};
    constexpr int kPaletteSize = 10;

    using detail::svg_num;
    using detail::tick_label;
    using detail::xml_escape;

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.width
        << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width << " "
        << options.height << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
        << "\" fill=\"white\"/>\n";
    if (!options.title.empty())
        out << "<text x=\"" << svg_num((left + right) / 2) << "\" y=\"24\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(options.title)
            << "</text>\n";

    // Axes with 5 linear ticks each.
    out << "<line x1=\"" << svg_num(left) << "\" y1=\"" << svg_num(bottom) << "\" x2=\""
        << svg_num(right) << "\" y2=\"" << svg_num(bottom)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << svg_num(left) << "\" y1=\"" << svg_num(top) << "\" x2=\""
        << svg_num(left) << "\" y2=\"" << svg_num(bottom)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double px = x_min + (x_max - x_min) * i / 4.0;
        double gx = sx(px);
        out << "<line x1=\"" << svg_num(gx) << "\" y1=\"" << svg_num(bottom) << "\" x2=\""
            << svg_num(gx) << "\" y2=\"" << svg_num(bottom + 5) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << svg_num(gx) << "\" y=\"" << svg_num(bottom + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << tick_label(px) << "</text>\n";
        double ry = y_max * i / 4.0;
        double gy = sy(ry);
        out << "<line x1=\"" << svg_num(left - 5) << "\" y1=\"" << svg_num(gy) << "\" x2=\""
            << svg_num(left) << "\" y2=\"" << svg_num(gy) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << svg_num(left - 8) << "\" y=\"" << svg_num(gy + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
            << tick_label(ry) << "</text>\n";
    }
    out << "<text x=\"" << svg_num((left + right) / 2) << "\" y=\"" << svg_num(bottom + 42)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">p</text>\n";
    out << "<text x=\"18\" y=\"" << svg_num((top + bottom) / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
        << "transform=\"rotate(-90 18 " << svg_num((top + bottom) / 2)
        << ")\">logical failure rate</text>\n";

    int index = 0;
    for (const auto &[key, pts] : series) {
        const char *color = kPalette[index % kPaletteSize];
        const auto &[family, size, decoder, sector] = key;

        if (pts.size() > 1) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" "
                << "points=\"";
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (i) out << ' ';
                out << svg_num(sx(pts[i]->p)) << ',' << svg_num(sy(pts[i]->rate));
            }
            out << "\"/>\n";
        }
        for (const CurvePoint *c : pts) {
            double gx = sx(c->p);
            out << "<line x1=\"" << svg_num(gx) << "\" y1=\"" << svg_num(sy(c->ci_low))
                << "\" x2=\"" << svg_num(gx) << "\" y2=\"" << svg_num(sy(c->ci_high))
                << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
            for (double y : {c->ci_low, c->ci_high})
                out << "<line x1=\"" << svg_num(gx - 3) << "\" y1=\"" << svg_num(sy(y))
                    << "\" x2=\"" << svg_num(gx + 3) << "\" y2=\"" << svg_num(sy(y))
                    << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
            out << "<circle cx=\"" << svg_num(gx) << "\" cy=\"" << svg_num(sy(c->rate))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }

        double ly = top + 16.0 * index;
        out << "<line x1=\"" << svg_num(right + 12) << "\" y1=\"" << svg_num(ly) << "\" x2=\""
            << svg_num(right + 34) << "\" y2=\"" << svg_num(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << svg_num(right + 40) << "\" y=\"" << svg_num(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">"
            << xml_escape(family + " " + std::to_string(size) + " " + decoder + " " + sector)
            << "</text>\n";
        ++index;
    }
    out << "</svg>\n";
}

}  // namespace torimatch
