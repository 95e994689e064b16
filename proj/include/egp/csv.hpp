#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace egp::csv {

// Splits one CSV record. Double quotes guard commas, "" inside a quoted field
// is a literal quote. Records do not span lines.
std::vector<std::string> split_record(const std::string& line);

std::string trim(std::string_view s);

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace egp::csv
