#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nightgrid::csv {

/// Splits one CSV record. Double-quoted fields may contain commas and
/// doubled quotes. Throws DataError on an unterminated quote.
std::vector<std::string> split_line(std::string_view line);

/// Quotes a field only when it contains a comma, quote or newline.
std::string escape(std::string_view field);

/// Strips a trailing '\r' and a leading UTF-8 byte-order mark (first line only).
std::string_view trim_record(std::string_view line, bool first_line);

}  // namespace nightgrid::csv
