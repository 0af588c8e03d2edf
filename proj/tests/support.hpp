#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cubewalk/cubefunc.hpp"
#include "cubewalk/graycode.hpp"

namespace cubewalk::testing {

// 000,100,101,001,011,111,110,010
inline const std::vector<Word> kLStar = {0, 4, 5, 1, 3, 7, 6, 2};
inline const std::vector<int> kLStarTransitions = {3, 1, 3, 2, 3, 1, 3, 2};

// 0000,0010,0110,1110,1111,0111,0011,0001,0101,0100,1100,1101,1001,1011,1010,1000
inline const std::vector<Word> kL4 = {0, 2, 6, 14, 15, 7, 3, 1, 5, 4, 12, 13, 9, 11, 10, 8};
inline const std::vector<int> kL4Transitions = {2, 3, 4, 1, 4, 3, 2, 3, 1, 4, 1, 3, 2, 1, 2, 4};

inline const std::vector<Word> kProfileA = {13, 10, 9, 14, 3, 11, 1, 12, 15, 4, 7, 5, 2, 6, 0, 8};

// f*(x1,x2,x3) = (x2 xor x3, x1 xor not x3, not x3), x1 leftmost.
inline BooleanMap fStar() {
  std::vector<Word> images(8);
  for (Word x = 0; x < 8; ++x) {
    const Word x1 = (x >> 2) & 1, x2 = (x >> 1) & 1, x3 = x & 1;
    images[x] = ((x2 ^ x3) << 2) | ((x1 ^ (1 - x3)) << 1) | (1 - x3);
  }
  return BooleanMap(3, images);
}

// Transition matrix of f*, numerators over 3.
inline const int kFStarMatrix[8][8] = {
    {1, 1, 1, 0, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 1, 0, 0}, {0, 0, 1, 1, 0, 0, 1, 0},
    {0, 1, 1, 1, 0, 0, 0, 0}, {1, 0, 0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 1, 1, 0, 1},
    {0, 0, 0, 0, 1, 0, 1, 1}, {0, 0, 0, 1, 0, 0, 1, 1},
};

/// Independent of the library validators: walk the flips with a std::set.
inline bool isCyclicGray(int n, const std::vector<int>& items) {
  if (items.size() != (std::size_t{1} << n)) return false;
  std::set<unsigned> seen;
  unsigned x = 0;
  for (int i : items) {
    if (i < 1 || i > n) return false;
    if (!seen.insert(x).second) return false;
    x ^= 1u << (i - 1);
  }
  return x == 0 && seen.size() == items.size();
}

inline std::vector<int> toVector(std::span<const int> s) { return {s.begin(), s.end()}; }
inline std::vector<Word> toVector(std::span<const Word> s) { return {s.begin(), s.end()}; }

inline std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

inline std::string dataPath(const std::string& name) {
  return std::string(CUBEWALK_TEST_DATA_DIR) + "/" + name;
}

}  // namespace cubewalk::testing
