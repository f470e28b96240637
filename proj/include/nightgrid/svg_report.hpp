#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "nightgrid/corpus_io.hpp"

namespace nightgrid {

/// Plot geometry shared by every chart. The viewport is 800 x 600 and the
/// plot box spans x in [80, 780] and y in [20, 540] pixels.
///
/// An axis maps a data value v (log10 v on log axes) linearly from the padded
/// range [lo, hi] onto the box: lo and hi are the data min and max widened by
/// 5% of their span on each side (by 0.5 when the span is zero). x grows to
/// the right, y grows upward, so y_px = 540 - (v - lo) / (hi - lo) * 520.
namespace svg_layout {
inline constexpr double kWidth = 800.0;
inline constexpr double kHeight = 600.0;
inline constexpr double kLeft = 80.0;
inline constexpr double kRight = 780.0;
inline constexpr double kTop = 20.0;
inline constexpr double kBottom = 540.0;
inline constexpr double kPadFraction = 0.05;
}  // namespace svg_layout

class AxisMap {
public:
    /// `values` are already on the axis scale (log10 applied by the caller).
    AxisMap(std::span<const double> values, double px_from, double px_to);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double operator()(double v) const noexcept;

private:
    double lo_ = 0.0;
    double hi_ = 1.0;
    double px_from_ = 0.0;
    double px_to_ = 1.0;
};

/// Log-log scatter of hotspot count against population with the pooled
/// N = alpha P^beta fit drawn as a <line> across the population range.
/// Throws DataError for fewer than 3 rows.
void write_scaling_svg(std::span<const CorpusRow> rows, std::ostream& out);

/// Scatter of ln(GDP per km^2) against PI or AI with the least-squares
/// quadratic in the index drawn as a <polyline>.
void write_growth_svg(std::span<const CorpusRow> rows, IndexKind index, std::ostream& out);

/// Writes scaling.svg, growth_pi.svg and growth_ai.svg into `out_dir`.
/// Validates before creating anything, so an error leaves no files behind.
std::vector<std::filesystem::path> write_report(std::span<const CorpusRow> rows, const std::filesystem::path& out_dir);

}  // namespace nightgrid
