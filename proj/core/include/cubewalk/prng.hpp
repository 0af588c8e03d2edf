#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cubewalk/cubefunc.hpp"

namespace cubewalk {

/// 64-bit fixed-increment mixer driving the choice of component at each step.
class StrategyGenerator {
 public:
  static constexpr std::uint64_t kIncrement = 0x9E3779B97F4A7C15ULL;

  explicit StrategyGenerator(std::uint64_t seed = 0) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += kIncrement;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform index in [1, n]: rejection on the low ceil(log2 n) bits. n = 1
  /// consumes nothing.
  int nextIndex(int n) noexcept {
    if (n <= 1) return 1;
    const int width = 64 - __builtin_clzll(static_cast<std::uint64_t>(n - 1));
    const std::uint64_t mask = ~std::uint64_t{0} >> (64 - width);
    while (true) {
      const std::uint64_t r = next() & mask;
      if (r < static_cast<std::uint64_t>(n)) return static_cast<int>(r) + 1;
    }
  }

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

/// b applications of x <- F_f(s, x), s drawn from `strategy` each time.
template <typename Strategy>
Word walk(const BooleanMap& f, Word x, std::size_t b, Strategy&& strategy) {
  const int n = f.bits();
  for (std::size_t step = 0; step < b; ++step) {
    const Word mask = componentMask(n, strategy(n));
    x = (x & ~mask) | (f(x) & mask);
  }
  return x;
}

struct GeneratorConfig {
  BooleanMap f;
  std::size_t b = 1;
  Word seedState = 0;
  std::uint64_t seedStrategy = 0;

  int bits() const noexcept { return f.bits(); }
};

/// Stream of n-bit blocks; each block continues the walk from the previous one.
class Generator {
 public:
  explicit Generator(GeneratorConfig config);

  const GeneratorConfig& config() const noexcept { return config_; }
  Word state() const noexcept { return x_; }

  Word nextBlock();

  /// Packs successive blocks MSB-first; bits left over carry into the next call.
  void fill(std::span<std::uint8_t> out);
  std::vector<std::uint8_t> bytes(std::size_t count);

  std::size_t pendingBits() const noexcept { return pendingBits_; }

 private:
  GeneratorConfig config_;
  Word x_;
  StrategyGenerator strategy_;
  std::uint64_t pending_ = 0;
  std::size_t pendingBits_ = 0;
};

/// Built-in function with its walk length b.
struct Profile {
  char tag;
  std::size_t b;
  BooleanMap f;
};

/// Tags 'a'..'e' (n = 4..8).
const Profile& builtinProfile(char tag);
const Profile& builtinProfile(std::string_view tag);
GeneratorConfig profileConfig(char tag, Word seedState = 0, std::uint64_t seedStrategy = 0);

}  // namespace cubewalk
