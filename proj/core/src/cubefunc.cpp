#include "cubewalk/cubefunc.hpp"

#include <algorithm>

#include "text.hpp"

namespace cubewalk {

BooleanMap::BooleanMap(int n, std::vector<Word> images) : n_(n), images_(std::move(images)) {
  requireBits(n_, 1, kMaxBits, "Boolean map");
  if (images_.size() != stateCount(n_)) {
    throw std::invalid_argument("Boolean map for n=" + std::to_string(n_) + " needs " +
                                std::to_string(stateCount(n_)) + " images, got " +
                                std::to_string(images_.size()));
  }
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] > allOnes(n_)) {
      throw std::invalid_argument("image of " + std::to_string(x) + " is " +
                                  std::to_string(images_[x]) + ", not below " +
                                  std::to_string(images_.size()));
    }
  }
}

Word applyComponent(const BooleanMap& f, int i, Word x) {
  const int n = f.bits();
  if (i < 1 || i > n) {
    throw std::out_of_range("component index " + std::to_string(i) + " outside [1, " +
                            std::to_string(n) + "]");
  }
  const Word mask = componentMask(n, i);
  return (x & ~mask) | (f(x) & mask);
}

HamiltonianCycle::HamiltonianCycle(int n, std::vector<Word> vertices)
    : n_(n), vertices_(std::move(vertices)) {
  requireBits(n_, 1, 20, "Hamiltonian cycle");
  const std::size_t length = stateCount(n_);
  if (vertices_.size() != length) {
    throw CycleError("cycle on the " + std::to_string(n_) + "-cube needs " +
                         std::to_string(length) + " vertices, got " +
                         std::to_string(vertices_.size()),
                     std::min(vertices_.size(), length));
  }
  std::vector<bool> seen(length, false);
  for (std::size_t k = 0; k < length; ++k) {
    const Word v = vertices_[k];
    if (v >= length || seen[v]) {
      throw CycleError("vertex " + std::to_string(k) + " (" + std::to_string(v) +
                           ") is out of range or repeated",
                       k);
    }
    seen[v] = true;
  }
  for (std::size_t k = 0; k < length; ++k) {
    const Word next = vertices_[(k + 1) % length];
    if (popcount(vertices_[k] ^ next) != 1) {
      throw CycleError("vertices " + std::to_string(k) + " and " +
                           std::to_string((k + 1) % length) + " (" + toBinary(vertices_[k], n_) +
                           ", " + toBinary(next, n_) + ") are not adjacent",
                       k);
    }
  }
}

HamiltonianCycle HamiltonianCycle::reversed() const {
  std::vector<Word> v(vertices_.size());
  // Keep the first vertex in place.
  v[0] = vertices_[0];
  std::reverse_copy(vertices_.begin() + 1, vertices_.end(), v.begin() + 1);
  return HamiltonianCycle(n_, std::move(v));
}

HamiltonianCycle HamiltonianCycle::rotatedTo(Word start) const {
  const auto it = std::find(vertices_.begin(), vertices_.end(), start);
  if (it == vertices_.end()) throw std::invalid_argument("vertex not on the cycle");
  std::vector<Word> v(vertices_.size());
  std::rotate_copy(vertices_.begin(), it, vertices_.end(), v.begin());
  return HamiltonianCycle(n_, std::move(v));
}

HamiltonianCycle grayToCycle(const GrayCode& code) {
  const auto w = code.words();
  return HamiltonianCycle(code.bits(), std::vector<Word>(w.begin(), w.end()));
}

GrayCode cycleToGray(const HamiltonianCycle& cycle) {
  const auto v = cycle.vertices();
  return GrayCode(cycle.bits(), std::vector<Word>(v.begin(), v.end()));
}

BooleanMap removeCycle(const HamiltonianCycle& cycle) {
  const int n = cycle.bits();
  const auto v = cycle.vertices();
  std::vector<Word> images(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    // ~successor: every bit negated except the one the cycle flips here.
    images[v[k]] = ~v[(k + 1) % v.size()] & allOnes(n);
  }
  return BooleanMap(n, std::move(images));
}

std::optional<HamiltonianCycle> RemovedPermutation::hamiltonianCycle() const {
  if (!isHamiltonian()) return std::nullopt;
  return HamiltonianCycle(n, cycles[0]);
}

RemovedPermutation recoverRemovedPermutation(const BooleanMap& f) {
  const int n = f.bits();
  const std::size_t count = f.size();
  std::vector<Word> successor(count);
  std::vector<bool> hit(count, false);
  for (Word x = 0; x < count; ++x) {
    const Word fixed = ~(f(x) ^ x) & allOnes(n);
    if (popcount(fixed) != 1) {
      throw MapShapeError("vertex " + toBinary(x, n) + " keeps " + std::to_string(popcount(fixed)) +
                              " components of f(x) equal to x, expected exactly 1",
                          x);
    }
    const Word y = x ^ fixed;
    if (hit[y]) {
      throw MapShapeError("vertex " + toBinary(x, n) + " removes an arc into " + toBinary(y, n) +
                              ", which already lost its incoming arc",
                          x);
    }
    hit[y] = true;
    successor[x] = y;
  }

  RemovedPermutation result{n, {}};
  std::vector<bool> visited(count, false);
  for (Word x = 0; x < count; ++x) {
    if (visited[x]) continue;
    std::vector<Word> cycle;
    for (Word y = x; !visited[y]; y = successor[y]) {
      visited[y] = true;
      cycle.push_back(y);
    }
    result.cycles.push_back(std::move(cycle));
  }
  return result;
}

IterationGraph::IterationGraph(int n, std::vector<Word> targets)
    : n_(n), targets_(std::move(targets)) {
  requireBits(n_, 1, kMaxBits, "iteration graph");
  if (targets_.size() != stateCount(n_) * static_cast<std::size_t>(n_)) {
    throw std::invalid_argument("iteration graph needs n * 2^n arc slots");
  }
}

std::size_t IterationGraph::selfLoops() const {
  std::size_t loops = 0;
  for (Word x = 0; x < vertexCount(); ++x) {
    for (Word y : successors(x)) loops += (y == x);
  }
  return loops;
}

IterationGraph buildIterationGraph(const BooleanMap& f) {
  const int n = f.bits();
  std::vector<Word> targets;
  targets.reserve(f.size() * static_cast<std::size_t>(n));
  for (Word x = 0; x < f.size(); ++x) {
    for (int i = 1; i <= n; ++i) targets.push_back(applyComponent(f, i, x));
  }
  return IterationGraph(n, std::move(targets));
}

BooleanMap parseFunctionTable(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  const auto last = text.find_last_not_of(" \t\r\n");
  if (first == std::string_view::npos || text[first] != '[' || text[last] != ']' || last == first) {
    throw std::invalid_argument("function table must be a bracketed list like [1,0]");
  }
  const auto values = detail::parseDecimalList(text.substr(first + 1, last - first - 1));
  const int n = detail::exactLog2(values.size());
  if (n < 1) {
    throw std::invalid_argument("function table length " + std::to_string(values.size()) +
                                " is not a power of two >= 2");
  }
  if (n > kMaxBits) throw std::invalid_argument("function table too large");
  std::vector<Word> images;
  images.reserve(values.size());
  for (std::size_t x = 0; x < values.size(); ++x) {
    if (values[x] >= values.size()) {
      throw std::invalid_argument("image of " + std::to_string(x) + " is " +
                                  std::to_string(values[x]) + ", not below " +
                                  std::to_string(values.size()));
    }
    images.push_back(static_cast<Word>(values[x]));
  }
  return BooleanMap(n, std::move(images));
}

std::string formatFunctionTable(const BooleanMap& f) {
  return "[" + detail::joinDecimal(f.images()) + "]";
}

}  // namespace cubewalk
