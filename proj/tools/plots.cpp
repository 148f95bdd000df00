#include "plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "signorini/errors.hpp"

namespace signorini::cli {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr int kMarginL = 70;
constexpr int kMarginR = 20;
constexpr int kMarginT = 40;
constexpr int kMarginB = 50;

}  // namespace

std::string svg_plot(const std::vector<Curve>& curves, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel) {
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& c : curves) {
        for (double x : c.x) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
        }
        for (double y : c.y) {
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (!(x1 > x0)) x1 = x0 + 1.0;
    if (!(y1 > y0)) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    const double ypad = 0.05 * (y1 - y0);
    y0 -= ypad;
    y1 += ypad;
    const double pw = kWidth - kMarginL - kMarginR;
    const double ph = kHeight - kMarginT - kMarginB;
    auto px = [&](double x) { return kMarginL + pw * (x - x0) / (x1 - x0); };
    auto py = [&](double y) { return kHeight - kMarginB - ph * (y - y0) / (y1 - y0); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
         "\" height=\"" + std::to_string(kHeight) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + std::to_string(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"monospace\" font-size=\"15\">" + title + "</text>\n";
    // Axes.
    s += "<line x1=\"" + num(kMarginL) + "\" y1=\"" + num(kHeight - kMarginB) + "\" x2=\"" +
         num(kWidth - kMarginR) + "\" y2=\"" + num(kHeight - kMarginB) +
         "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + num(kMarginL) + "\" y1=\"" + num(kMarginT) + "\" x2=\"" + num(kMarginL) +
         "\" y2=\"" + num(kHeight - kMarginB) + "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = x0 + (x1 - x0) * k / 4.0;
        const double yv = y0 + (y1 - y0) * k / 4.0;
        s += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(kHeight - kMarginB + 18) +
             "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">" + num(xv) +
             "</text>\n";
        s += "<text x=\"" + num(kMarginL - 6) + "\" y=\"" + num(py(yv) + 4) +
             "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" + num(yv) +
             "</text>\n";
    }
    s += "<text x=\"" + std::to_string(kWidth / 2) + "\" y=\"" + std::to_string(kHeight - 12) +
         "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">" + xlabel +
         "</text>\n";
    s += "<text x=\"16\" y=\"" + std::to_string(kHeight / 2) +
         "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\" "
         "transform=\"rotate(-90 16 " + std::to_string(kHeight / 2) + ")\">" + ylabel +
         "</text>\n";
    for (const auto& c : curves) {
        if (c.x.empty()) continue;
        s += "<polyline fill=\"none\" stroke=\"" + c.color + "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            if (i) s += " ";
            s += num(px(c.x[i])) + "," + num(py(c.y[i]));
        }
        s += "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

std::string frequency_curve_svg(const FrequencyReport& report) {
    Curve c;
    for (const auto& smp : report.samples) {
        if (smp.degenerate) continue;
        c.x.push_back(smp.r);
        c.y.push_back(smp.D);
    }
    return svg_plot({c}, "Almgren frequency", "r", "D_r");
}

std::string phi_loglog_svg(const FrequencyReport& report) {
    Curve pts;
    pts.color = "#1f6fb3";
    for (const auto& smp : report.samples) {
        if (smp.degenerate || !(smp.phi_avg > 0.0)) continue;
        pts.x.push_back(std::log(smp.r));
        pts.y.push_back(std::log(smp.phi_avg));
    }
    std::vector<Curve> curves{pts};
    if (report.mu.valid && !pts.x.empty()) {
        // Fitted slope 2 mu anchored at the window.
        Curve fit;
        fit.color = "#c23b22";
        double yref = 0.0;
        int cnt = 0;
        for (std::size_t i = 0; i < pts.x.size(); ++i) {
            yref += pts.y[i] - 2.0 * report.mu.mu * pts.x[i];
            ++cnt;
        }
        yref /= cnt;
        fit.x = {pts.x.front(), pts.x.back()};
        fit.y = {yref + 2.0 * report.mu.mu * pts.x.front(), yref + 2.0 * report.mu.mu * pts.x.back()};
        curves.push_back(fit);
    }
    return svg_plot(curves, "Sphere average (slope 2 mu = " + num(2.0 * report.mu.mu) + ")",
                    "log r", "log phi");
}

std::string plane_heatmap_ppm(const ScalarField& u, const FreeBoundaryResult* fb) {
    const Grid& g = u.grid();
    const int n = g.dim();
    const int m = g.nodes_per_axis();
    const int mid = g.plane_layer();
    const int rows = (n == 2) ? 1 : m;

    double vmax = 0.0;
    std::vector<double> plane(static_cast<std::size_t>(rows) * m);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < m; ++j) {
            std::array<int, 3> idx{};
            if (n == 2) {
                idx = {j, mid, 0};
            } else {
                idx = {i, j, mid};
            }
            const double v = u.at(idx);
            plane[static_cast<std::size_t>(i) * m + j] = v;
            vmax = std::max(vmax, std::abs(v));
        }
    }
    if (vmax == 0.0) vmax = 1.0;

    std::vector<std::array<int, 3>> pix(plane.size());
    for (std::size_t k = 0; k < plane.size(); ++k) {
        const double t = plane[k] / vmax;  // [-1, 1], diverging palette at 0
        int r, gcol, b;
        if (t >= 0.0) {
            r = 255;
            gcol = static_cast<int>(std::lround(255 * (1.0 - t)));
            b = gcol;
        } else {
            b = 255;
            gcol = static_cast<int>(std::lround(255 * (1.0 + t)));
            r = gcol;
        }
        pix[k] = {r, gcol, b};
    }
    if (fb && rows > 1) {
        for (const auto& cell : fb->interface_cells) {
            for (int di = 0; di <= 1; ++di)
                for (int dj = 0; dj <= 1; ++dj) {
                    const std::size_t k =
                        static_cast<std::size_t>(cell[0] + di) * m + (cell[1] + dj);
                    pix[k] = {0, 0, 0};
                }
        }
    }

    std::string s = "P3\n" + std::to_string(m) + " " + std::to_string(rows) + "\n255\n";
    for (int i = rows - 1; i >= 0; --i) {  // north up
        for (int j = 0; j < m; ++j) {
            const auto& p = pix[static_cast<std::size_t>(i) * m + j];
            s += std::to_string(p[0]) + " " + std::to_string(p[1]) + " " + std::to_string(p[2]);
            s += (j + 1 == m) ? "\n" : " ";
        }
    }
    return s;
}

}  // namespace signorini::cli
