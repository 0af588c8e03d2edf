#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cubewalk::detail {

/// Parses "a,b,c" (whitespace tolerated around items) into unsigned values.
/// Throws std::invalid_argument naming the offending item.
std::vector<std::uint64_t> parseDecimalList(std::string_view text);

template <typename Range>
std::string joinDecimal(const Range& values) {
  std::string out;
  bool first = true;
  for (auto v : values) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  }
  return out;
}

/// log2 of a power-of-two length, or -1.
int exactLog2(std::size_t length);

}  // namespace cubewalk::detail
