#include "nightgrid/error.hpp"

#include <fmt/format.h>

namespace nightgrid {

namespace {

std::string position_prefix(std::size_t line, std::size_t column) {
    if (column == 0) {
        return fmt::format("line {}", line);
    }
    return fmt::format("line {}, column {}", line, column);
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : DataError(position_prefix(line, column) + ": " + what), line_(line), column_(column) {}

}  // namespace nightgrid
