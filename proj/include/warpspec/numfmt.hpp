#pragma once

// Locale-independent numeric formatting shared by the CSV and JSON writers.
// Values are rendered with 17 significant digits via std::to_chars so that
// identical inputs always produce identical bytes.

#include <string>
#include <string_view>

namespace warpspec {

std::string fmt17(double x);
std::string fmt_int(long long x);

// Parses a complete floating-point token; returns false on any trailing
// garbage or malformed input.
bool parse_double(std::string_view s, double& out);
bool parse_int(std::string_view s, long long& out);

// Strips ASCII whitespace from both ends.
std::string_view trim(std::string_view s);

}  // namespace warpspec
