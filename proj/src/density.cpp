#include "incistat/density.hpp"

#include <cmath>

namespace incistat::report {

size_t DensityGrid::total_in_bounds() const {
    size_t total = 0;
    for (const size_t c : cells) total += c;
    return total;
}

DensityGrid bin_density(std::span<const clean::AnalysisRecord> records, const Bounds& bounds,
                        size_t nx, size_t ny) {
    if (nx < 1 || ny < 1) throw DataError("bin_density: grid must be at least 1x1");
    if (bounds.lat_min >= bounds.lat_max || bounds.lon_min >= bounds.lon_max)
        throw DataError("bin_density: degenerate bounds");

    DensityGrid grid;
    grid.bounds = bounds;
    grid.nx = nx;
    grid.ny = ny;
    grid.cells.assign(nx * ny, 0);

    const double lon_span = bounds.lon_max - bounds.lon_min;
    const double lat_span = bounds.lat_max - bounds.lat_min;
    for (const auto& r : records) {
        if (r.longitude < bounds.lon_min || r.longitude > bounds.lon_max ||
            r.latitude < bounds.lat_min || r.latitude > bounds.lat_max) {
            ++grid.out_of_bounds;
            continue;
        }
        auto cell_index = [](double v, double lo, double span, size_t n) {
            const auto idx = static_cast<long>(std::floor((v - lo) / span * static_cast<double>(n)));
            if (idx < 0) return size_t{0};
            if (idx >= static_cast<long>(n)) return n - 1;  // max edge inclusive
            return static_cast<size_t>(idx);
        };
        const size_t ix = cell_index(r.longitude, bounds.lon_min, lon_span, nx);
        const size_t iy = cell_index(r.latitude, bounds.lat_min, lat_span, ny);
        ++grid.cells[iy * nx + ix];
    }
    return grid;
}

}  // namespace incistat::report
