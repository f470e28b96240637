#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nightgrid {

/// Invalid or degenerate input data. Maps to exit code 2 in the CLI.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A DataError tied to a position in a text input. Line and column are 1-based;
/// a column of 0 means the whole line.
class ParseError : public DataError {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Bad command-line usage or configuration. Maps to exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nightgrid
