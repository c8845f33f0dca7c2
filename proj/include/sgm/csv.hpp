#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sgm::csv {

/// Shortest decimal form that parses back to the same double.
std::string format(double value);

std::vector<std::string> split(std::string_view line);

/// Throws kParseError naming `what` when the field is not a complete number.
double parse_double(std::string_view field, std::string_view what);
long long parse_int(std::string_view field, std::string_view what);
unsigned long long parse_uint(std::string_view field, std::string_view what);

}  // namespace sgm::csv
