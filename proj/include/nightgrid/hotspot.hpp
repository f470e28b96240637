#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nightgrid/grid_io.hpp"

namespace nightgrid {

/// Summary of the valid cells of a grid. `max` is the largest density rho_1.
struct GridStats {
    std::size_t n_valid = 0;
    double mean = 0.0;
    double max = 0.0;
    double total = 0.0;
};

/// Throws DataError("no valid cells") on empty input and
/// DataError("degenerate city: no luminosity") when every value is zero.
GridStats grid_stats(std::span<const double> values);

/// Lorenz-curve quantile threshold F = 1 - mean/max. F is in [0, 1) and is
/// exactly 0 iff all values are equal.
double loubar_threshold(std::span<const double> values);

/// Fractional hotspot count Ct = sum(rho_i / rho_1), where rho_1 is the max.
/// Satisfies 1 <= Ct <= N and Ct / N == mean / max.
double fractional_count(std::span<const double> values);

/// Integer hotspot count from the expected count N (1 - F):
/// max(1, floor(expected)). Values within 1e-9 relative of an integer snap to
/// it first, so summation rounding cannot move the count across a boundary.
std::size_t hotspot_count(double expected_count);

struct HotspotSet {
    double f_threshold = 0.0;
    double density_cutoff = 0.0;    // value of the k-th largest cell
    std::vector<CellPoint> cells;   // descending value, ties in row-major order
    std::size_t count = 0;
    double fractional_count = 0.0;
    double cell_area = 0.0;         // m^2
    GridStats stats;
};

/// Selects the top max(1, floor(N (1 - F))) valid cells by value. Ties at the
/// cutoff go to the smaller row, then the smaller column. Zero-valued cells
/// count toward N; nodata cells do not.
HotspotSet extract_hotspots(const LuminosityGrid& grid);

}  // namespace nightgrid
