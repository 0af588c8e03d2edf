#include "text.hpp"

#include <charconv>
#include <stdexcept>

#include "cubewalk/word.hpp"

namespace cubewalk {

std::string toBinary(Word w, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int k = 0; k < n; ++k) {
    if (w & (Word{1} << (n - 1 - k))) s[static_cast<std::size_t>(k)] = '1';
  }
  return s;
}

namespace detail {

namespace {

std::string_view trim(std::string_view s) {
  const auto isSpace = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && isSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && isSpace(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<std::uint64_t> parseDecimalList(std::string_view text) {
  std::vector<std::uint64_t> values;
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty list");
  std::size_t item = 0;
  while (true) {
    const auto comma = text.find(',');
    const auto token = trim(text.substr(0, comma));
    std::uint64_t v = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (token.empty() || ec != std::errc{} || ptr != end) {
      throw std::invalid_argument("item " + std::to_string(item) + ": '" + std::string(token) +
                                  "' is not a non-negative decimal integer");
    }
    values.push_back(v);
    ++item;
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return values;
}

int exactLog2(std::size_t length) {
  if (length == 0 || (length & (length - 1)) != 0) return -1;
  int n = 0;
  while ((std::size_t{1} << n) != length) ++n;
  return n;
}

}  // namespace detail
}  // namespace cubewalk
