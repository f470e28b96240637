#include "nightgrid/numeric.hpp"

#include <charconv>

#include <fmt/format.h>

namespace nightgrid {

std::string format_double(double v) {
    return fmt::format("{}", v);
}

std::optional<double> parse_double(std::string_view text) {
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        return std::nullopt;
    }
    return value;
}

}  // namespace nightgrid
