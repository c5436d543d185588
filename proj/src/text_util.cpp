#include "text_util.hpp"

#include <array>
#include <cmath>

namespace gcf::detail {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool LineReader::next(std::string_view& line) {
  while (std::getline(in_, buffer_)) {
    ++line_no_;
    const auto t = trim(buffer_);
    if (t.empty() || t.front() == '#') continue;
    line = t;
    return true;
  }
  return false;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i == s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split(std::string_view s, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(s.substr(start)));
      return out;
    }
    out.push_back(trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
}

bool try_parse_size(std::string_view token, std::size_t& out) {
  if (token.empty()) return false;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

bool try_parse_double(std::string_view token, double& out) {
  if (token.empty()) return false;
  const auto* begin = token.data();
  if (*begin == '+') ++begin;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

std::size_t parse_size(std::string_view token, std::string_view what, std::size_t line) {
  std::size_t value = 0;
  if (!try_parse_size(token, value)) {
    throw ParseError("expected non-negative integer for " + std::string(what) + ", got '" +
                         std::string(token) + "'",
                     line);
  }
  return value;
}

double parse_double(std::string_view token, std::string_view what, std::size_t line) {
  double value = 0.0;
  if (!try_parse_double(token, value)) {
    throw ParseError(
        "expected finite number for " + std::string(what) + ", got '" + std::string(token) + "'",
        line);
  }
  return value;
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

}  // namespace gcf::detail
