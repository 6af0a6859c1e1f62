#include "qmb/runner/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace qmb::runner {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 80, kRight = 160, kTop = 40, kBottom = 60;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct Axis {
    double lo = 0, hi = 1;
    bool log = false;

    double map(double v) const {
        const double t = log ? std::log10(v) : v;
        return (t - lo) / (hi - lo);
    }
    double value(double t) const { return log ? std::pow(10.0, t) : t; }
};

Axis make_axis(const std::vector<double>& values, bool log) {
    Axis a;
    a.log = log;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : values) {
        if (!std::isfinite(v) || (log && v <= 0)) continue;
        const double t = log ? std::log10(v) : v;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    if (!std::isfinite(lo)) lo = 0, hi = 1;
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    a.lo = lo - pad;
    a.hi = hi + pad;
    return a;
}

}  // namespace

std::string render_svg(const Plot& plot) {
    std::vector<double> xs, ys;
    for (const auto& s : plot.series) {
        xs.insert(xs.end(), s.x.begin(), s.x.end());
        ys.insert(ys.end(), s.y.begin(), s.y.end());
    }
    const Axis ax = make_axis(xs, plot.log_x), ay = make_axis(ys, plot.log_y);
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + ax.map(v) * pw; };
    auto py = [&](double v) { return kTop + (1.0 - ay.map(v)) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
           escape(plot.title) + "</text>\n";
    out += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double f = i / 4.0;
        const double xv = ax.value(ax.lo + f * (ax.hi - ax.lo));
        const double yv = ay.value(ay.lo + f * (ay.hi - ay.lo));
        const double gx = kLeft + f * pw, gy = kTop + (1 - f) * ph;
        out += "<line x1=\"" + num(gx) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(gx) + "\" y2=\"" +
               num(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(gx) + "\" y=\"" + num(kTop + ph + 18) + "\" text-anchor=\"middle\">" +
               tick_label(xv) + "</text>\n";
        out += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(gy) + "\" x2=\"" + num(kLeft) + "\" y2=\"" +
               num(gy) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(gy + 4) + "\" text-anchor=\"end\">" + tick_label(yv) +
               "</text>\n";
    }
    out += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 15) + "\" text-anchor=\"middle\">" +
           escape(plot.x_label + (plot.log_x ? " (log)" : "")) + "</text>\n";
    out += "<text transform=\"translate(18," + num(kTop + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
           escape(plot.y_label + (plot.log_y ? " (log)" : "")) + "</text>\n";

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& s = plot.series[k];
        const std::string color = kColors[k % std::size(kColors)];
        std::string points;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if ((plot.log_x && s.x[i] <= 0) || (plot.log_y && s.y[i] <= 0)) continue;
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            points += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
            if (s.markers)
                out += "<circle cx=\"" + num(px(s.x[i])) + "\" cy=\"" + num(py(s.y[i])) + "\" r=\"2.5\" fill=\"" +
                       color + "\"/>\n";
        }
        if (!points.empty()) points.pop_back();
        out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
        const double ly = kTop + 12 + 18.0 * static_cast<double>(k);
        out += "<line x1=\"" + num(kWidth - kRight + 12) + "\" y1=\"" + num(ly) + "\" x2=\"" +
               num(kWidth - kRight + 32) + "\" y2=\"" + num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + num(kWidth - kRight + 38) + "\" y=\"" + num(ly + 4) + "\">" + escape(s.name) +
               "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace qmb::runner
