#pragma once

// Small text helpers shared by the CSV/JSON writers and readers.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace podreliab {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

// printf-style fixed notation, e.g. format_fixed(25.046, 2) == "25.05".
std::string format_fixed(double value, int decimals);

// Fixed notation with trailing zeros (and a trailing point) removed:
// 3.190 -> "3.19", 2.000 -> "2".
std::string format_trimmed(double value, int decimals);

std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

std::string_view trim(std::string_view text);

// Splits one CSV record. Double-quoted fields may contain commas; doubled
// quotes inside a quoted field decode to one quote.
std::vector<std::string> split_csv_line(std::string_view line);

// Quotes a field only when it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);

}  // namespace podreliab
