#pragma once

#include "nightgrid/point.hpp"

namespace nightgrid::detail {

/// Exact sign of (b - a) x (d - c), the z-component of the cross product of
/// two edge vectors. Uses a floating-point filter and falls back to exact
/// expansion arithmetic when the filter cannot decide.
int cross_sign(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

/// Exact orientation of c relative to the directed line a -> b:
/// +1 left turn, -1 right turn, 0 collinear.
inline int orientation(const Point2& a, const Point2& b, const Point2& c) {
    return cross_sign(a, b, a, c);
}

}  // namespace nightgrid::detail
