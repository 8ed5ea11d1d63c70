#include "verity/harness/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "verity/error.hpp"

namespace verity::harness {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 60.0;

std::string num(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.2f", value);
    return std::string(buffer);
}

// A tick step of the form {1, 2, 5} * 10^k that yields 4-8 ticks.
double tick_step(double span) {
    if (span <= 0.0) return 1.0;
    const double raw = span / 5.0;
    const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= mult * magnitude) return mult * magnitude;
    }
    return 10.0 * magnitude;
}

}  // namespace

std::string scatter_svg(const std::vector<TableRow>& rows) {
    double max_x = 1.0;
    double max_y = 1.0;
    for (const auto& row : rows) {
        max_x = std::max(max_x, row.cost_ratio);
        max_y = std::max(max_y, row.dor_ratio);
    }
    max_x *= 1.1;
    max_y *= 1.15;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto sx = [&](double x) { return kMarginLeft + x / max_x * plot_w; };
    auto sy = [&](double y) { return kHeight - kMarginBottom - y / max_y * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
           "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " +
           num(kHeight) + "\">\n";
    svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Axes.
    svg += "  <line x1=\"" + num(kMarginLeft) + "\" y1=\"" + num(sy(0)) +
           "\" x2=\"" + num(kWidth - kMarginRight) + "\" y2=\"" + num(sy(0)) +
           "\" stroke=\"black\"/>\n";
    svg += "  <line x1=\"" + num(kMarginLeft) + "\" y1=\"" + num(kMarginTop) +
           "\" x2=\"" + num(kMarginLeft) + "\" y2=\"" + num(sy(0)) +
           "\" stroke=\"black\"/>\n";

    const double x_step = tick_step(max_x);
    for (double x = 0.0; x <= max_x + 1e-9; x += x_step) {
        svg += "  <line x1=\"" + num(sx(x)) + "\" y1=\"" + num(sy(0)) + "\" x2=\"" +
               num(sx(x)) + "\" y2=\"" + num(sy(0) + 5) + "\" stroke=\"black\"/>\n";
        svg += "  <text x=\"" + num(sx(x)) + "\" y=\"" + num(sy(0) + 20) +
               "\" font-family=\"sans-serif\" font-size=\"11\" "
               "text-anchor=\"middle\">" +
               num(x) + "</text>\n";
    }
    const double y_step = tick_step(max_y);
    for (double y = 0.0; y <= max_y + 1e-9; y += y_step) {
        svg += "  <line x1=\"" + num(kMarginLeft - 5) + "\" y1=\"" + num(sy(y)) +
               "\" x2=\"" + num(kMarginLeft) + "\" y2=\"" + num(sy(y)) +
               "\" stroke=\"black\"/>\n";
        svg += "  <text x=\"" + num(kMarginLeft - 9) + "\" y=\"" + num(sy(y) + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\" "
               "text-anchor=\"end\">" +
               num(y) + "</text>\n";
    }

    // Axis titles.
    svg += "  <text x=\"" + num(kMarginLeft + plot_w / 2) + "\" y=\"" +
           num(kHeight - 15) +
           "\" font-family=\"sans-serif\" font-size=\"13\" "
           "text-anchor=\"middle\">cost over baseline</text>\n";
    svg += "  <text x=\"18\" y=\"" + num(kMarginTop + plot_h / 2) +
           "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 18 " + num(kMarginTop + plot_h / 2) +
           ")\">DOR over baseline</text>\n";

    // Points with labels.
    for (const auto& row : rows) {
        const double px = sx(row.cost_ratio);
        const double py = sy(row.dor_ratio);
        svg += "  <circle cx=\"" + num(px) + "\" cy=\"" + num(py) +
               "\" r=\"4\" fill=\"steelblue\"/>\n";
        svg += "  <text x=\"" + num(px + 7) + "\" y=\"" + num(py - 7) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + row.strategy +
               "/" + row.model + " (" + row.cost_ratio_2dp + ", " +
               row.dor_ratio_2dp + ")</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

void emit_scatter(const RunReport& report, const std::filesystem::path& out_path,
                  const Scope& scope) {
    const auto rows = report_tables(report, scope);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("emit_scatter: cannot write " + out_path.string());
    out << scatter_svg(rows);
}

}  // namespace verity::harness
