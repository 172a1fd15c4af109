#pragma once

#include <charconv>
#include <cstddef>
#include <optional>
#include <string_view>

namespace evote::io::detail {

inline bool isSpace(char ch) { return ch == ' ' || ch == '\t'; }

inline std::size_t skipSpace(std::string_view s, std::size_t pos) {
  while (pos < s.size() && isSpace(s[pos])) ++pos;
  return pos;
}

inline std::string_view trim(std::string_view s) {
  std::size_t b = skipSpace(s, 0);
  std::size_t e = s.size();
  while (e > b && isSpace(s[e - 1])) --e;
  return s.substr(b, e - b);
}

/// Whole-token decimal integer; no sign for unsigned types, no whitespace.
template <typename T>
std::optional<T> parseInt(std::string_view s) {
  T value{};
  if (s.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

/// Calls visit(lineNumber, line) for each line, 1-based, with "\r\n" handled.
template <typename Visit>
void forEachLine(std::string_view text, Visit &&visit) {
  std::size_t lineNo = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    visit(++lineNo, line);
  }
}

}  // namespace evote::io::detail
