#pragma once

#include <span>
#include <string>
#include <vector>

#include "nightgrid/hotspot.hpp"
#include "nightgrid/point.hpp"

namespace nightgrid {

/// Counter-clockwise convex hull without collinear boundary points.
/// All-collinear input yields its two extreme points; a single distinct
/// point yields itself; empty input yields an empty hull.
std::vector<Point2> convex_hull(std::span<const Point2> points);

/// Exact diameter of a point set: rotating calipers over the convex hull.
/// Throws DataError("diameter undefined for a single hotspot") for < 2 points.
double max_pairwise_distance(std::span<const Point2> points);

/// Diameter of the disk whose area equals `area`.
double equal_area_diameter(double area);

/// Mean distance to the center over a uniform disk of the given area, (2/3) R.
double equal_area_mean_center_distance(double area);

struct ProximityIndex {
    double pi = 1.0;
    double pi_raw = 1.0;
    double dd = 0.0;  // m
    double dm = 0.0;  // m
    bool degenerate = false;
};

struct AgglomerationIndex {
    double ai = 1.0;
    double ai_raw = 1.0;
    double de = 0.0;  // m
    double dh = 0.0;  // m
    Point2 centroid;
    bool degenerate = false;
};

/// PI = Dd / Dm where Dd is the equal-area circle diameter for
/// points.size() * cell_area and Dm the largest distance between points.
/// Clamped to 1; fewer than two points, or all points coincident, yield 1 with
/// `degenerate` set.
ProximityIndex proximity_index(std::span<const Point2> points, double cell_area);

/// AI = De / Dh where De = (2/3) sqrt(area / pi) and Dh is the mean distance
/// of the points to their centroid. Clamped to 1; Dh == 0 or a single point
/// yields 1 with `degenerate` set.
AgglomerationIndex agglomeration_index(std::span<const Point2> points, double cell_area);

struct CompactnessIndices {
    double pi = 1.0;
    double ai = 1.0;
    double pi_raw = 1.0;
    double ai_raw = 1.0;
    double dd = 0.0;
    double dm = 0.0;
    double de = 0.0;
    double dh = 0.0;
    double hotspot_area = 0.0;  // m^2, count * cell_area
    std::vector<std::string> degenerate_flags;
};

CompactnessIndices compute_compactness(std::span<const Point2> points, double cell_area);
CompactnessIndices compute_compactness(const HotspotSet& hotspots);

}  // namespace nightgrid
