#pragma once

// Line-oriented parsing helpers shared by the text formats.

#include <charconv>
#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "gcf/error.hpp"

namespace gcf::detail {

/// Reads lines, skipping blank lines and `#` comments, tracking line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next meaningful line with surrounding whitespace trimmed.
  bool next(std::string_view& line);
  std::size_t line_number() const noexcept { return line_no_; }

 private:
  std::istream& in_;
  std::string buffer_;
  std::size_t line_no_ = 0;
};

std::string_view trim(std::string_view s);

/// Splits on runs of spaces and tabs.
std::vector<std::string_view> split_ws(std::string_view s);

/// Splits on a single delimiter, trimming each field.
std::vector<std::string_view> split(std::string_view s, char delim);

bool try_parse_size(std::string_view token, std::size_t& out);
bool try_parse_double(std::string_view token, double& out);

std::size_t parse_size(std::string_view token, std::string_view what, std::size_t line);
double parse_double(std::string_view token, std::string_view what, std::size_t line);

/// Shortest representation that parses back to the same double.
std::string format_double(double value);

}  // namespace gcf::detail
