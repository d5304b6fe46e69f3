#include "incistat/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "incistat/common.hpp"

namespace incistat::report {

namespace {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string svg_open(const std::string& title, double xmin, double xmax, double ymin,
                     double ymax) {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"480\" "
                      "viewBox=\"0 0 720 480\">\n";
    out += "<!-- data-bounds " + format_double(xmin) + " " + format_double(xmax) + " " +
           format_double(ymin) + " " + format_double(ymax) + " -->\n";
    out += "<rect x=\"0\" y=\"0\" width=\"720\" height=\"480\" fill=\"white\"/>\n";
    out += "<text x=\"360\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">" + title + "</text>\n";
    return out;
}

std::string axes_box() {
    return "<rect x=\"" + num(kMarginLeft) + "\" y=\"" + num(kMarginTop) + "\" width=\"" +
           num(kPlotWidth - kMarginLeft - kMarginRight) + "\" height=\"" +
           num(kPlotHeight - kMarginTop - kMarginBottom) +
           "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
}

std::string axis_labels(double xmin, double xmax, double ymin, double ymax) {
    std::string out;
    out += "<text x=\"" + num(kMarginLeft) + "\" y=\"470\" font-family=\"sans-serif\" "
           "font-size=\"11\">" + format_double(xmin) + "</text>\n";
    out += "<text x=\"" + num(kPlotWidth - kMarginRight) + "\" y=\"470\" text-anchor=\"end\" "
           "font-family=\"sans-serif\" font-size=\"11\">" + format_double(xmax) + "</text>\n";
    out += "<text x=\"8\" y=\"" + num(kPlotHeight - kMarginBottom) + "\" "
           "font-family=\"sans-serif\" font-size=\"11\">" + format_double(ymin) + "</text>\n";
    out += "<text x=\"8\" y=\"" + num(kMarginTop + 10.0) + "\" font-family=\"sans-serif\" "
           "font-size=\"11\">" + format_double(ymax) + "</text>\n";
    return out;
}

}  // namespace

double pixel_x(double x, double xmin, double xmax) {
    const double span = xmax > xmin ? xmax - xmin : 1.0;
    return kMarginLeft + (x - xmin) / span * (kPlotWidth - kMarginLeft - kMarginRight);
}

double pixel_y(double y, double ymin, double ymax) {
    const double span = ymax > ymin ? ymax - ymin : 1.0;
    return kPlotHeight - kMarginBottom -
           (y - ymin) / span * (kPlotHeight - kMarginTop - kMarginBottom);
}

CoefPlotSpec coef_plot_spec(std::span<const std::string> names,
                            std::span<const double> estimates,
                            std::span<const double> standard_errors) {
    if (names.size() != estimates.size() || names.size() != standard_errors.size())
        throw DataError("coef_plot_spec: length mismatch");
    CoefPlotSpec spec;
    for (size_t i = 0; i < names.size(); ++i) {
        CoefPoint p;
        p.name = names[i];
        p.estimate = estimates[i];
        p.interval_low = estimates[i] - 1.96 * standard_errors[i];
        p.interval_high = estimates[i] + 1.96 * standard_errors[i];
        spec.coefficients.push_back(std::move(p));
    }
    return spec;
}

std::string plot_histogram(std::span<const double> values, double bin_width,
                           const std::string& title) {
    if (values.empty()) throw DataError("plot_histogram: empty input");
    if (bin_width <= 0.0) throw DataError("plot_histogram: bin width must be positive");

    double lo = values[0], hi = values[0];
    for (const double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double edge0 = std::floor(lo / bin_width) * bin_width;
    const size_t bins =
        std::max<size_t>(1, static_cast<size_t>(std::floor((hi - edge0) / bin_width)) + 1);
    std::vector<size_t> counts(bins, 0);
    for (const double v : values) {
        size_t b = static_cast<size_t>(std::floor((v - edge0) / bin_width));
        if (b >= bins) b = bins - 1;
        ++counts[b];
    }
    size_t max_count = 1;
    for (const size_t c : counts) max_count = std::max(max_count, c);

    const double xmin = edge0;
    const double xmax = edge0 + static_cast<double>(bins) * bin_width;
    const double ymax = static_cast<double>(max_count);
    std::string out = svg_open(title, xmin, xmax, 0.0, ymax);
    out += axes_box();
    for (size_t b = 0; b < bins; ++b) {
        if (counts[b] == 0) continue;
        const double x0 = pixel_x(xmin + static_cast<double>(b) * bin_width, xmin, xmax);
        const double x1 = pixel_x(xmin + static_cast<double>(b + 1) * bin_width, xmin, xmax);
        const double y = pixel_y(static_cast<double>(counts[b]), 0.0, ymax);
        const double base = pixel_y(0.0, 0.0, ymax);
        out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y) + "\" width=\"" + num(x1 - x0) +
               "\" height=\"" + num(base - y) +
               "\" fill=\"#4878a8\" stroke=\"#22303c\" stroke-width=\"0.5\"/>\n";
    }
    out += axis_labels(xmin, xmax, 0.0, ymax);
    out += "</svg>\n";
    return out;
}

std::string plot_scatter_with_fits(std::span<const std::pair<double, double>> points,
                                   std::span<const model::TrendFit> fits,
                                   const std::string& title) {
    if (points.empty()) throw DataError("plot_scatter_with_fits: empty input");
    double xmin = points[0].first, xmax = points[0].first;
    double ymin = points[0].second, ymax = points[0].second;
    for (const auto& [x, y] : points) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    for (const auto& fit : fits) {
        for (int s = 0; s <= 64; ++s) {
            const double t = xmin + (xmax - xmin) * s / 64.0;
            const double v = model::predict_trend(fit, t);
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (ymax == ymin) ymax = ymin + 1.0;

    std::string out = svg_open(title, xmin, xmax, ymin, ymax);
    out += axes_box();
    for (const auto& [x, y] : points) {
        out += "<circle cx=\"" + num(pixel_x(x, xmin, xmax)) + "\" cy=\"" +
               num(pixel_y(y, ymin, ymax)) + "\" r=\"2.5\" fill=\"#333333\"/>\n";
    }
    const char* colors[] = {"#c03028", "#2860c0", "#28a060"};
    for (size_t f = 0; f < fits.size(); ++f) {
        std::string pts;
        for (int s = 0; s <= 256; ++s) {
            const double t = xmin + (xmax - xmin) * s / 256.0;
            const double v = model::predict_trend(fits[f], t);
            if (!pts.empty()) pts += " ";
            pts += num(pixel_x(t, xmin, xmax)) + "," + num(pixel_y(v, ymin, ymax));
        }
        out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
               colors[f % 3] + "\" stroke-width=\"1.5\"/>\n";
    }
    out += axis_labels(xmin, xmax, ymin, ymax);
    out += "</svg>\n";
    return out;
}

std::string plot_coefficients(const CoefPlotSpec& spec, const std::string& title) {
    if (spec.coefficients.empty()) throw DataError("plot_coefficients: empty input");
    double xmin = 0.0, xmax = 0.0;  // keep zero inside the range
    for (const auto& c : spec.coefficients) {
        xmin = std::min({xmin, c.interval_low});
        xmax = std::max({xmax, c.interval_high});
    }
    const double pad = 0.05 * (xmax - xmin + 1e-9);
    xmin -= pad;
    xmax += pad;

    const size_t n = spec.coefficients.size();
    std::string out = svg_open(title, xmin, xmax, 0.0, static_cast<double>(n));
    out += axes_box();
    if (spec.zero_line) {
        const double zx = pixel_x(0.0, xmin, xmax);
        out += "<line x1=\"" + num(zx) + "\" y1=\"" + num(kMarginTop) + "\" x2=\"" + num(zx) +
               "\" y2=\"" + num(kPlotHeight - kMarginBottom) +
               "\" stroke=\"#888888\" stroke-dasharray=\"4,3\" stroke-width=\"1\"/>\n";
    }
    for (size_t i = 0; i < n; ++i) {
        const auto& c = spec.coefficients[i];
        const double cy = pixel_y(static_cast<double>(i) + 0.5, 0.0, static_cast<double>(n));
        const double x0 = pixel_x(c.interval_low, xmin, xmax);
        const double x1 = pixel_x(c.interval_high, xmin, xmax);
        out += "<line x1=\"" + num(x0) + "\" y1=\"" + num(cy) + "\" x2=\"" + num(x1) +
               "\" y2=\"" + num(cy) + "\" stroke=\"#2860c0\" stroke-width=\"1.5\"/>\n";
        out += "<circle cx=\"" + num(pixel_x(c.estimate, xmin, xmax)) + "\" cy=\"" + num(cy) +
               "\" r=\"3\" fill=\"#c03028\"/>\n";
        out += "<text x=\"" + num(kMarginLeft - 4.0) + "\" y=\"" + num(cy + 3.0) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" + c.name +
               "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string plot_density(const DensityGrid& grid, const std::string& title) {
    if (grid.nx == 0 || grid.ny == 0) throw DataError("plot_density: empty grid");
    size_t max_count = 0;
    for (const size_t c : grid.cells) max_count = std::max(max_count, c);
    const double log_max = std::log1p(static_cast<double>(std::max<size_t>(max_count, 1)));

    std::string out = svg_open(title, grid.bounds.lon_min, grid.bounds.lon_max,
                               grid.bounds.lat_min, grid.bounds.lat_max);
    out += axes_box();
    const double lon_step = (grid.bounds.lon_max - grid.bounds.lon_min) /
                            static_cast<double>(grid.nx);
    const double lat_step = (grid.bounds.lat_max - grid.bounds.lat_min) /
                            static_cast<double>(grid.ny);
    for (size_t iy = 0; iy < grid.ny; ++iy) {
        for (size_t ix = 0; ix < grid.nx; ++ix) {
            const size_t count = grid.at(ix, iy);
            if (count == 0) continue;
            const double lon0 = grid.bounds.lon_min + static_cast<double>(ix) * lon_step;
            const double lat0 = grid.bounds.lat_min + static_cast<double>(iy) * lat_step;
            const double x0 = pixel_x(lon0, grid.bounds.lon_min, grid.bounds.lon_max);
            const double x1 = pixel_x(lon0 + lon_step, grid.bounds.lon_min, grid.bounds.lon_max);
            const double y0 = pixel_y(lat0 + lat_step, grid.bounds.lat_min, grid.bounds.lat_max);
            const double y1 = pixel_y(lat0, grid.bounds.lat_min, grid.bounds.lat_max);
            const double intensity = std::log1p(static_cast<double>(count)) / log_max;
            const int shade = 255 - static_cast<int>(std::lround(215.0 * intensity));
            char color[8];
            std::snprintf(color, sizeof(color), "#%02xa0%02x", shade / 2, shade);
            out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" + num(x1 - x0) +
                   "\" height=\"" + num(y1 - y0) + "\" fill=\"" + std::string(color) +
                   "\" fill-opacity=\"0.9\"/>\n";
        }
    }
    out += axis_labels(grid.bounds.lon_min, grid.bounds.lon_max, grid.bounds.lat_min,
                       grid.bounds.lat_max);
    out += "</svg>\n";
    return out;
}

}  // namespace incistat::report
