#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace nightgrid {

/// Compensated (Neumaier) summation. Keeps long sums over raster cells
/// accurate to a few ulps regardless of length.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            compensation_ += (sum_ - t) + v;
        } else {
            compensation_ += (v - t) + sum_;
        }
        sum_ = t;
    }

    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Parses the whole of `text` as a double; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view text);

}  // namespace nightgrid
