#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "vanetcast/errors.hpp"
#include "vanetcast/results.hpp"

namespace vanetcast {

// Axes for the result plot: x is one of the sweep parameters, y is always
// p_succ in [0, 1]. Rows are grouped into one series per distinct
// (method, model, non-x scenario parameters) combination.
struct AxesSpec {
    std::string x_param = "pm";  // pm | L | rho
};

namespace detail {

inline double row_x(const ResultRow& row, const std::string& param) {
    if (param == "pm") return row.pm;
    if (param == "L") return row.road_length;
    if (param == "rho") return row.rho;
    throw InputError("unknown x parameter '" + param + "' (expected pm|L|rho)");
}

inline std::string series_label(const ResultRow& row, const std::string& x_param) {
    std::string label = method_name(row.method) + " " + model_name(row.model) +
                        "(r=" + fmt_g(row.model.range_m);
    if (row.model.kind == ConnectionModel::Kind::log_normal)
        label += ",a=" + fmt_g(row.model.path_loss_exponent) +
                 ",s=" + fmt_g(row.model.shadowing_stddev);
    label += ")";
    if (x_param != "L") label += " L=" + fmt_g(row.road_length);
    if (x_param != "rho") label += " rho=" + fmt_g(row.rho);
    if (x_param != "pm") label += " pm=" + fmt_g(row.pm);
    return label;
}

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// Largest "nice" step (1, 2, or 5 times a power of ten) giving at most
// `max_ticks` ticks across the span.
inline double nice_step(double span, int max_ticks) {
    double step = std::pow(10.0, std::floor(std::log10(span / max_ticks)));
    for (const double m : {1.0, 2.0, 5.0, 10.0}) {
        if (span / (step * m) <= max_ticks) return step * m;
    }
    return step * 10.0;
}

}  // namespace detail

// Renders the rows as a deterministic SVG document: one polyline per series
// with point markers and 95% interval whiskers, labeled axes, and a legend.
// Identical input yields identical bytes.
inline std::string emit_plot(const std::vector<ResultRow>& rows, const AxesSpec& axes) {
    if (rows.empty()) throw InputError("emit_plot needs at least one row");

    struct Point {
        double x, y, lo, hi;
    };
    std::map<std::string, std::vector<Point>> series;
    for (const auto& row : rows)
        series[detail::series_label(row, axes.x_param)].push_back(
            {detail::row_x(row, axes.x_param), row.p_succ, row.ci_low, row.ci_high});

    double x_min = series.begin()->second.front().x;
    double x_max = x_min;
    for (auto& [label, pts] : series) {
        std::stable_sort(pts.begin(), pts.end(),
                         [](const Point& a, const Point& b) { return a.x < b.x; });
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i > 0 && !(pts[i].x > pts[i - 1].x))
                throw InputError("incompatible axes: series '" + label +
                                 "' has duplicate x = " + fmt_g(pts[i].x) +
                                 " (is '" + axes.x_param + "' really the swept parameter?)");
            x_min = std::min(x_min, pts[i].x);
            x_max = std::max(x_max, pts[i].x);
        }
    }
    if (rows.size() > 1 && x_min == x_max)
        throw InputError("incompatible axes: '" + axes.x_param +
                         "' never varies across the rows; was a different parameter swept?");
    if (x_min == x_max) {  // single-point span
        x_min -= 0.5;
        x_max += 0.5;
    }

    constexpr double W = 800, H = 560;
    constexpr double left = 70, right = 630, top = 30, bottom = 510;
    const auto X = [&](double x) {
        return left + (x - x_min) / (x_max - x_min) * (right - left);
    };
    const auto Y = [&](double y) { return bottom - y * (bottom - top); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"560\" "
           "viewBox=\"0 0 800 560\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"560\" fill=\"white\"/>\n";

    // y grid and ticks at 0.1 steps
    for (int i = 0; i <= 10; ++i) {
        const double y = i / 10.0;
        const double py = Y(y);
        svg += "<line x1=\"" + detail::svg_num(left) + "\" y1=\"" + detail::svg_num(py) +
               "\" x2=\"" + detail::svg_num(right) + "\" y2=\"" + detail::svg_num(py) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + detail::svg_num(left - 8) + "\" y=\"" + detail::svg_num(py + 4) +
               "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" +
               fmt_g(y) + "</text>\n";
    }
    // x ticks
    const double step = detail::nice_step(x_max - x_min, 8);
    for (double t = std::ceil(x_min / step - 1e-9) * step; t <= x_max + 1e-9 * step; t += step) {
        const double px = X(t);
        svg += "<line x1=\"" + detail::svg_num(px) + "\" y1=\"" + detail::svg_num(bottom) +
               "\" x2=\"" + detail::svg_num(px) + "\" y2=\"" + detail::svg_num(bottom + 5) +
               "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + detail::svg_num(px) + "\" y=\"" + detail::svg_num(bottom + 20) +
               "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
               fmt_g(std::abs(t) < step * 1e-9 ? 0.0 : t) + "</text>\n";
    }
    // frame and axis labels
    svg += "<rect x=\"" + detail::svg_num(left) + "\" y=\"" + detail::svg_num(top) +
           "\" width=\"" + detail::svg_num(right - left) + "\" height=\"" +
           detail::svg_num(bottom - top) + "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + detail::svg_num((left + right) / 2) + "\" y=\"" +
           detail::svg_num(H - 12) +
           "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">" +
           axes.x_param + "</text>\n";
    svg += "<text x=\"18\" y=\"" + detail::svg_num((top + bottom) / 2) +
           "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 18 " +
           detail::svg_num((top + bottom) / 2) + ")\">p_succ</text>\n";

    static constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                               "#9467bd", "#ff7f0e", "#8c564b",
                                               "#17becf", "#7f7f7f"};
    std::size_t idx = 0;
    for (const auto& [label, pts] : series) {
        const char* color = kPalette[idx % (sizeof kPalette / sizeof *kPalette)];
        if (pts.size() > 1) {
            svg += "<polyline fill=\"none\" stroke=\"";
            svg += color;
            svg += "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (i) svg += ' ';
                svg += detail::svg_num(X(pts[i].x)) + "," + detail::svg_num(Y(pts[i].y));
            }
            svg += "\"/>\n";
        }
        for (const auto& p : pts) {
            if (p.hi > p.lo)
                svg += "<line x1=\"" + detail::svg_num(X(p.x)) + "\" y1=\"" +
                       detail::svg_num(Y(p.lo)) + "\" x2=\"" + detail::svg_num(X(p.x)) +
                       "\" y2=\"" + detail::svg_num(Y(p.hi)) + "\" stroke=\"" + color +
                       "\" stroke-width=\"1\"/>\n";
            svg += "<circle cx=\"" + detail::svg_num(X(p.x)) + "\" cy=\"" +
                   detail::svg_num(Y(p.y)) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
        }
        // legend entry
        const double ly = top + 16 + 18 * static_cast<double>(idx);
        svg += "<rect x=\"" + detail::svg_num(right + 10) + "\" y=\"" +
               detail::svg_num(ly - 8) + "\" width=\"12\" height=\"12\" fill=\"" + color +
               "\"/>\n";
        svg += "<text x=\"" + detail::svg_num(right + 27) + "\" y=\"" + detail::svg_num(ly + 2) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + label + "</text>\n";
        ++idx;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace vanetcast
