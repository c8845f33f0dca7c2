#include "sgm/csv.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "sgm/error.hpp"

namespace sgm::csv {

namespace {

template <typename T>
T parse(std::string_view field, std::string_view what) {
  T value{};
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kParseError,
                "bad " + std::string(what) + " field '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string format(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::vector<std::string> split(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(std::string_view field, std::string_view what) {
  if (field == "nan") return std::nan("");
  return parse<double>(field, what);
}

long long parse_int(std::string_view field, std::string_view what) {
  return parse<long long>(field, what);
}

unsigned long long parse_uint(std::string_view field, std::string_view what) {
  return parse<unsigned long long>(field, what);
}

}  // namespace sgm::csv
