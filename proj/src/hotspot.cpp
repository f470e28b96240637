#include "nightgrid/hotspot.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nightgrid/error.hpp"
#include "nightgrid/numeric.hpp"

namespace nightgrid {

namespace {

constexpr double kCountSnapTolerance = 1e-9;

// Shared by the span and grid entry points. `values` yields only valid cells.
template <typename ForEachValue>
GridStats stats_from(ForEachValue&& for_each_value) {
    GridStats s;
    CompensatedSum total;
    double lo = 0.0;
    bool first = true;
    for_each_value([&](double v) {
        ++s.n_valid;
        total.add(v);
        if (first) {
            s.max = lo = v;
            first = false;
        } else {
            s.max = std::max(s.max, v);
            lo = std::min(lo, v);
        }
    });
    if (s.n_valid == 0) {
        throw DataError("no valid cells");
    }
    if (!(s.max > 0.0)) {
        throw DataError("degenerate city: no luminosity");
    }
    s.total = total.value();
    // A plateau has mean == max exactly, whatever the summation did.
    s.mean = lo == s.max ? s.max : s.total / static_cast<double>(s.n_valid);
    return s;
}

double threshold_from(const GridStats& s) {
    return std::max(0.0, 1.0 - s.mean / s.max);
}

}  // namespace

GridStats grid_stats(std::span<const double> values) {
    return stats_from([&](auto&& visit) {
        for (double v : values) {
            visit(v);
        }
    });
}

double loubar_threshold(std::span<const double> values) {
    return threshold_from(grid_stats(values));
}

double fractional_count(std::span<const double> values) {
    const GridStats s = grid_stats(values);
    CompensatedSum ct;
    for (double v : values) {
        ct.add(v / s.max);
    }
    return ct.value();
}

std::size_t hotspot_count(double expected_count) {
    double e = expected_count;
    const double nearest = std::round(e);
    if (std::abs(e - nearest) <= kCountSnapTolerance * std::max(1.0, std::abs(nearest))) {
        e = nearest;
    }
    const double k = std::floor(e);
    return k < 1.0 ? 1 : static_cast<std::size_t>(k);
}

HotspotSet extract_hotspots(const LuminosityGrid& grid) {
    grid.require_valid_cells();
    const auto values = grid.values();

    std::vector<std::size_t> order;
    order.reserve(grid.valid_count());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (grid.is_valid(i)) {
            order.push_back(i);
        }
    }

    HotspotSet out;
    out.stats = stats_from([&](auto&& visit) {
        for (std::size_t i : order) {
            visit(values[i]);
        }
    });
    out.f_threshold = threshold_from(out.stats);

    CompensatedSum ct;
    for (std::size_t i : order) {
        ct.add(values[i] / out.stats.max);
    }
    out.fractional_count = ct.value();
    out.count = std::min(hotspot_count(out.fractional_count), order.size());

    // Strict total order: value descending, then row-major index ascending.
    const auto ranks_before = [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) {
            return values[a] > values[b];
        }
        return a < b;
    };
    const auto kth = order.begin() + static_cast<std::ptrdiff_t>(out.count);
    if (out.count < order.size()) {
        std::nth_element(order.begin(), kth - 1, order.end(), ranks_before);
    }
    std::sort(order.begin(), kth, ranks_before);

    const CellProjection proj(grid.header());
    out.cell_area = proj.cell_area();
    out.cells.reserve(out.count);
    for (auto it = order.begin(); it != kth; ++it) {
        const std::size_t r = *it / grid.cols();
        const std::size_t c = *it % grid.cols();
        const Point2 p = proj.center(r, c);
        out.cells.push_back({p.x, p.y, values[*it], r, c});
    }
    out.density_cutoff = out.cells.back().value;
    return out;
}

}  // namespace nightgrid
