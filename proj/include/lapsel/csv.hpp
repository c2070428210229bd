#pragma once

#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lapsel {

/// Full-precision decimal rendering (17 significant digits round-trips
/// every finite double).
inline std::string format_g17(double x) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf, static_cast<size_t>(n));
}

inline double parse_double(std::string_view field) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("malformed numeric field: '" +
                                std::string(field) + "'");
  }
  return value;
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

}  // namespace lapsel
