#pragma once

namespace nightgrid {

/// A location in a planar frame, in meters.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

}  // namespace nightgrid
