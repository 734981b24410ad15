/**
 * Copyright 2026 The fanolattice Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string_view>

namespace fano::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape(std::string_view text) {
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

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::string header(const std::vector<std::string>& comments) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    for (const std::string& c : comments) {
        // "--" is not allowed inside XML comments.
        std::string safe = c;
        for (std::size_t p = safe.find("--"); p != std::string::npos; p = safe.find("--")) {
            safe.replace(p, 2, "- -");
        }
        out += "<!-- " + safe + " -->\n";
    }
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return out;
}

struct Frame {
    double x0, x1, y0, y1;

    double px(double x) const {
        const double span = x1 > x0 ? x1 - x0 : 1.0;
        return kLeft + (x - x0) / span * (kWidth - kLeft - kRight);
    }
    double py(double y) const {
        const double span = y1 > y0 ? y1 - y0 : 1.0;
        return kHeight - kBottom - (y - y0) / span * (kHeight - kTop - kBottom);
    }
};

std::string text(double x, double y, std::string_view s, std::string_view anchor = "middle",
                 std::string_view extra = "") {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"13\" " +
           "text-anchor=\"" + std::string(anchor) + "\"" + std::string(extra) + ">" + escape(s) + "</text>\n";
}

std::string axes(const Frame& f, const std::string& title, const std::string& x_label,
                 const std::string& y_label) {
    std::string out;
    const double left = kLeft, right = kWidth - kRight, top = kTop, bottom = kHeight - kBottom;
    out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(right - left) +
           "\" height=\"" + num(bottom - top) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = f.x0 + (f.x1 - f.x0) * i / 4.0;
        const double yv = f.y0 + (f.y1 - f.y0) * i / 4.0;
        out += "<line x1=\"" + num(f.px(xv)) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(f.px(xv)) +
               "\" y2=\"" + num(bottom + 5) + "\" stroke=\"black\"/>\n";
        out += text(f.px(xv), bottom + 20, num(xv));
        out += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(f.py(yv)) + "\" x2=\"" + num(left) +
               "\" y2=\"" + num(f.py(yv)) + "\" stroke=\"black\"/>\n";
        out += text(left - 8, f.py(yv) + 4, num(yv), "end");
    }
    out += text((left + right) / 2, kTop - 15, title);
    out += text((left + right) / 2, kHeight - 15, x_label);
    const double ly = (top + bottom) / 2;
    out += text(20, ly, y_label, "middle", " transform=\"rotate(-90 20 " + num(ly) + ")\"");
    return out;
}

// Piecewise-linear blue-to-yellow ramp.
std::string color(double v) {
    static constexpr std::array<std::array<double, 3>, 5> stops = {{
        {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37},
    }};
    const double t = clamp01(v) * (stops.size() - 1);
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
    const double w = t - static_cast<double>(i);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround(stops[i][0] * (1 - w) + stops[i + 1][0] * w)),
                  static_cast<int>(std::lround(stops[i][1] * (1 - w) + stops[i + 1][1] * w)),
                  static_cast<int>(std::lround(stops[i][2] * (1 - w) + stops[i + 1][2] * w)));
    return buf;
}

}  // namespace

std::string render(const LinePlot& plot) {
    std::string out = header(plot.comments);
    const double x0 = plot.x.empty() ? 0.0 : plot.x.front();
    const double x1 = plot.x.empty() ? 1.0 : plot.x.back();
    const Frame f{x0, x1, 0.0, 1.0};
    out += axes(f, plot.title, plot.x_label, plot.y_label);

    double legend_y = kTop + 10;
    for (const Series& s : plot.series) {
        const std::size_t n = std::min(plot.x.size(), s.y.size());
        if (n == 1) {
            out += "<circle cx=\"" + num(f.px(plot.x[0])) + "\" cy=\"" + num(f.py(clamp01(s.y[0]))) +
                   "\" r=\"3\" fill=\"" + s.color + "\"/>\n";
        } else if (n > 1) {
            out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < n; ++i) {
                if (i > 0) out += ' ';
                out += num(f.px(plot.x[i])) + "," + num(f.py(clamp01(s.y[i])));
            }
            out += "\"/>\n";
        }
        const double lx = kWidth - kRight + 15;
        out += "<line x1=\"" + num(lx) + "\" y1=\"" + num(legend_y) + "\" x2=\"" + num(lx + 20) +
               "\" y2=\"" + num(legend_y) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"/>\n";
        out += text(lx + 26, legend_y + 4, s.label, "start");
        legend_y += 20;
    }
    out += "</svg>\n";
    return out;
}

std::string render(const Heatmap& map) {
    std::string out = header(map.comments);
    const std::size_t nx = map.x.size();
    const std::size_t ny = map.y.size();
    const auto edges = [](const std::vector<double>& c) {
        // Cell boundaries halfway between centres.
        std::vector<double> e(c.size() + 1);
        if (c.size() == 1) {
            e[0] = c[0] - 0.5;
            e[1] = c[0] + 0.5;
            return e;
        }
        for (std::size_t i = 1; i < c.size(); ++i) e[i] = 0.5 * (c[i - 1] + c[i]);
        e.front() = c.front() - (e[1] - c.front());
        e.back() = c.back() + (c.back() - e[c.size() - 1]);
        return e;
    };
    if (nx == 0 || ny == 0) {
        out += "</svg>\n";
        return out;
    }
    const std::vector<double> ex = edges(map.x);
    const std::vector<double> ey = edges(map.y);
    const Frame f{ex.front(), ex.back(), ey.front(), ey.back()};

    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double v = map.values[iy * nx + ix];
            const double x = f.px(ex[ix]);
            const double w = f.px(ex[ix + 1]) - x;
            const double y = f.py(ey[iy + 1]);
            const double h = f.py(ey[iy]) - y;
            out += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" +
                   num(h) + "\" fill=\"" + color(v) + "\" stroke=\"none\"/>\n";
        }
    }
    out += axes(f, map.title, map.x_label, map.y_label);

    // Colour bar.
    const double bx = kWidth - kRight + 30;
    const double top = kTop;
    const double bottom = kHeight - kBottom;
    constexpr int kSteps = 50;
    for (int i = 0; i < kSteps; ++i) {
        const double y = bottom - (i + 1) * (bottom - top) / kSteps;
        out += "<rect x=\"" + num(bx) + "\" y=\"" + num(y) + "\" width=\"20\" height=\"" +
               num((bottom - top) / kSteps + 0.5) + "\" fill=\"" + color((i + 0.5) / kSteps) + "\"/>\n";
    }
    out += text(bx + 26, bottom + 4, "0", "start");
    out += text(bx + 26, top + 4, "1", "start");
    out += "</svg>\n";
    return out;
}

}  // namespace fano::svg
