#pragma once

#include <span>
#include <vector>

#include "incistat/clean.hpp"

namespace incistat::report {

struct Bounds {
    double lat_min = 24.0;  // defaults cover the contiguous United States
    double lat_max = 50.0;
    double lon_min = -125.0;
    double lon_max = -66.0;
};

struct DensityGrid {
    Bounds bounds;
    size_t nx = 0;  // longitude cells
    size_t ny = 0;  // latitude cells
    std::vector<size_t> cells;  // row-major, [iy * nx + ix]
    size_t out_of_bounds = 0;

    size_t at(size_t ix, size_t iy) const { return cells[iy * nx + ix]; }
    size_t total_in_bounds() const;
};

/// Equirectangular count grid. Cells are half-open with the maximum edge
/// inclusive; a point on an interior edge belongs to the higher-index cell.
DensityGrid bin_density(std::span<const clean::AnalysisRecord> records, const Bounds& bounds,
                        size_t nx, size_t ny);

}  // namespace incistat::report
