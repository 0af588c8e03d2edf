#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubewalk {

/// An n-bit configuration of the cube, stored as its standard binary value.
using Word = std::uint32_t;

/// Largest supported bit-count for cube-sized tables.
inline constexpr int kMaxBits = 24;

inline constexpr std::size_t stateCount(int n) { return std::size_t{1} << n; }

inline constexpr Word allOnes(int n) { return static_cast<Word>(stateCount(n) - 1); }

/// Mask of component x_i in the reading x = (x_1, ..., x_n), x_1 leftmost.
inline constexpr Word componentMask(int n, int i) { return Word{1} << (n - i); }

/// Mask of the bit toggled by transition index i (index 1 is the rightmost bit).
inline constexpr Word transitionMask(int i) { return Word{1} << (i - 1); }

inline int popcount(Word w) { return __builtin_popcount(w); }

/// Binary string of w, leftmost character is the most significant bit.
std::string toBinary(Word w, int n);

inline void requireBits(int n, int lo, int hi, const char* what) {
  if (n < lo || n > hi) {
    throw std::invalid_argument(std::string(what) + ": bit-count " + std::to_string(n) +
                                " outside [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                "]");
  }
}

}  // namespace cubewalk
