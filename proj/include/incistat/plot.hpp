#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "incistat/density.hpp"
#include "incistat/trend.hpp"

namespace incistat::report {

/// One coefficient with its 95% interval (estimate +/- 1.96 * SE).
struct CoefPoint {
    std::string name;
    double estimate = 0.0;
    double interval_low = 0.0;
    double interval_high = 0.0;
};

struct CoefPlotSpec {
    std::vector<CoefPoint> coefficients;
    bool zero_line = true;
};

CoefPlotSpec coef_plot_spec(std::span<const std::string> names,
                            std::span<const double> estimates,
                            std::span<const double> standard_errors);

// All plots emit standalone SVG text, byte-deterministic for fixed inputs.
// Each carries a "<!-- data-bounds xmin xmax ymin ymax -->" comment mapping
// plot pixels back to data coordinates.

std::string plot_histogram(std::span<const double> values, double bin_width,
                           const std::string& title);

std::string plot_scatter_with_fits(std::span<const std::pair<double, double>> points,
                                   std::span<const model::TrendFit> fits,
                                   const std::string& title);

std::string plot_coefficients(const CoefPlotSpec& spec, const std::string& title);

/// Grid cells shaded by log(1 + count).
std::string plot_density(const DensityGrid& grid, const std::string& title);

// Pixel mapping shared by the plots and their tests.
inline constexpr double kPlotWidth = 720.0;
inline constexpr double kPlotHeight = 480.0;
inline constexpr double kMarginLeft = 60.0;
inline constexpr double kMarginRight = 20.0;
inline constexpr double kMarginTop = 30.0;
inline constexpr double kMarginBottom = 40.0;

double pixel_x(double x, double xmin, double xmax);
double pixel_y(double y, double ymin, double ymax);

}  // namespace incistat::report
