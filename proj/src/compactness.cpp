#include "nightgrid/compactness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nightgrid/error.hpp"
#include "nightgrid/numeric.hpp"
#include "predicates.hpp"

namespace nightgrid {

namespace {

double squared_distance(const Point2& a, const Point2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

bool lex_less(const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

}  // namespace

std::vector<Point2> convex_hull(std::span<const Point2> points) {
    std::vector<Point2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) {
        return pts;
    }

    // Andrew's monotone chain; a point is kept only on a strict left turn.
    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point2& p : pts) {
        while (k >= 2 && detail::orientation(hull[k - 2], hull[k - 1], p) <= 0) {
            --k;
        }
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        const Point2& p = pts[i];
        while (k >= lower && detail::orientation(hull[k - 2], hull[k - 1], p) <= 0) {
            --k;
        }
        hull[k++] = p;
    }
    hull.resize(k - 1);  // last point repeats the first
    return hull;
}

double max_pairwise_distance(std::span<const Point2> points) {
    if (points.size() < 2) {
        throw DataError("diameter undefined for a single hotspot");
    }
    const std::vector<Point2> h = convex_hull(points);
    const std::size_t m = h.size();
    if (m == 1) {
        return 0.0;
    }
    if (m == 2) {
        return std::sqrt(squared_distance(h[0], h[1]));
    }

    double best = 0.0;
    std::size_t j = 1;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t ni = (i + 1) % m;
        // Advance j while the next vertex lies strictly farther from edge (i, ni).
        int s = 0;
        while ((s = detail::cross_sign(h[i], h[ni], h[j], h[(j + 1) % m])) > 0) {
            j = (j + 1) % m;
        }
        best = std::max({best, squared_distance(h[i], h[j]), squared_distance(h[ni], h[j])});
        if (s == 0) {
            // Edge parallel to (j, j+1): both ends of that edge are antipodal.
            const Point2& nj = h[(j + 1) % m];
            best = std::max({best, squared_distance(h[i], nj), squared_distance(h[ni], nj)});
        }
    }
    return std::sqrt(best);
}

double equal_area_diameter(double area) {
    return 2.0 * std::sqrt(area / std::numbers::pi);
}

double equal_area_mean_center_distance(double area) {
    return (2.0 / 3.0) * std::sqrt(area / std::numbers::pi);
}

ProximityIndex proximity_index(std::span<const Point2> points, double cell_area) {
    ProximityIndex out;
    out.dd = equal_area_diameter(static_cast<double>(points.size()) * cell_area);
    if (points.size() < 2) {
        out.degenerate = true;
        return out;
    }
    out.dm = max_pairwise_distance(points);
    if (!(out.dm > 0.0)) {
        out.degenerate = true;
        return out;
    }
    out.pi_raw = out.dd / out.dm;
    out.pi = std::min(1.0, out.pi_raw);
    return out;
}

AgglomerationIndex agglomeration_index(std::span<const Point2> points, double cell_area) {
    AgglomerationIndex out;
    out.de = equal_area_mean_center_distance(static_cast<double>(points.size()) * cell_area);
    if (points.empty()) {
        out.degenerate = true;
        return out;
    }
    CompensatedSum sx, sy;
    for (const Point2& p : points) {
        sx.add(p.x);
        sy.add(p.y);
    }
    const double n = static_cast<double>(points.size());
    out.centroid = {sx.value() / n, sy.value() / n};
    if (points.size() < 2) {
        out.degenerate = true;
        return out;
    }
    CompensatedSum dist;
    for (const Point2& p : points) {
        dist.add(std::hypot(p.x - out.centroid.x, p.y - out.centroid.y));
    }
    out.dh = dist.value() / n;
    if (!(out.dh > 0.0)) {
        out.dh = 0.0;
        out.degenerate = true;
        return out;
    }
    out.ai_raw = out.de / out.dh;
    out.ai = std::min(1.0, out.ai_raw);
    return out;
}

CompactnessIndices compute_compactness(std::span<const Point2> points, double cell_area) {
    const ProximityIndex p = proximity_index(points, cell_area);
    const AgglomerationIndex a = agglomeration_index(points, cell_area);

    CompactnessIndices out;
    out.pi = p.pi;
    out.pi_raw = p.pi_raw;
    out.dd = p.dd;
    out.dm = p.dm;
    out.ai = a.ai;
    out.ai_raw = a.ai_raw;
    out.de = a.de;
    out.dh = a.dh;
    out.hotspot_area = static_cast<double>(points.size()) * cell_area;
    if (points.size() < 2) {
        out.degenerate_flags.emplace_back("single_hotspot");
    } else if (p.degenerate || a.degenerate) {
        out.degenerate_flags.emplace_back("coincident_hotspots");
    }
    return out;
}

CompactnessIndices compute_compactness(const HotspotSet& hotspots) {
    std::vector<Point2> pts;
    pts.reserve(hotspots.cells.size());
    for (const CellPoint& c : hotspots.cells) {
        pts.push_back(c.position());
    }
    return compute_compactness(pts, hotspots.cell_area);
}

}  // namespace nightgrid
