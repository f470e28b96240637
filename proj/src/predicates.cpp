#include "predicates.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace nightgrid::detail {

namespace {

constexpr double kEpsilon = std::numeric_limits<double>::epsilon() / 2.0;  // 2^-53
constexpr double kFilterBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;

struct TwoTerm {
    double hi;
    double lo;
};

TwoTerm two_sum(double a, double b) {
    const double s = a + b;
    const double bv = s - a;
    const double av = s - bv;
    return {s, (a - av) + (b - bv)};
}

TwoTerm two_product(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

// Adds `term` into a nonoverlapping expansion stored in increasing magnitude
// order (Shewchuk's Grow-Expansion). Zero components are kept; they do not
// affect the sign.
template <std::size_t N>
void grow(std::array<double, N>& e, std::size_t& len, double term) {
    double q = term;
    for (std::size_t i = 0; i < len; ++i) {
        const TwoTerm t = two_sum(q, e[i]);
        e[i] = t.lo;
        q = t.hi;
    }
    e[len++] = q;
}

int exact_cross_sign(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    // (bx - ax)(dy - cy) - (by - ay)(dx - cx), expanded into products of inputs.
    const std::array<std::array<double, 2>, 8> products{{
        {b.x, d.y},
        {-b.x, c.y},
        {-a.x, d.y},
        {a.x, c.y},
        {-b.y, d.x},
        {b.y, c.x},
        {a.y, d.x},
        {-a.y, c.x},
    }};
    std::array<double, 17> e{};
    std::size_t len = 0;
    for (const auto& [u, v] : products) {
        const TwoTerm p = two_product(u, v);
        grow(e, len, p.lo);
        grow(e, len, p.hi);
    }
    for (std::size_t i = len; i-- > 0;) {
        if (e[i] > 0.0) return 1;
        if (e[i] < 0.0) return -1;
    }
    return 0;
}

}  // namespace

int cross_sign(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const double left = (b.x - a.x) * (d.y - c.y);
    const double right = (b.y - a.y) * (d.x - c.x);
    const double det = left - right;
    const double bound = kFilterBound * (std::abs(left) + std::abs(right));
    if (det > bound) return 1;
    if (-det > bound) return -1;
    return exact_cross_sign(a, b, c, d);
}

}  // namespace nightgrid::detail
