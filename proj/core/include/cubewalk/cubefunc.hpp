#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cubewalk/graycode.hpp"
#include "cubewalk/word.hpp"

namespace cubewalk {

/// Image table of f: B^n -> B^n; images()[x] is f(x).
class BooleanMap {
 public:
  BooleanMap(int n, std::vector<Word> images);

  int bits() const noexcept { return n_; }
  std::size_t size() const noexcept { return images_.size(); }
  std::span<const Word> images() const noexcept { return images_; }
  Word operator()(Word x) const { return images_[x]; }

  friend bool operator==(const BooleanMap&, const BooleanMap&) = default;
  friend auto operator<=>(const BooleanMap&, const BooleanMap&) = default;

 private:
  int n_;
  std::vector<Word> images_;
};

/// x with component i (x_1 leftmost) replaced by component i of f(x).
Word applyComponent(const BooleanMap& f, int i, Word x);

/// Raised when consecutive cycle vertices are not cube neighbours, or a vertex
/// repeats. `index()` is the position of the offending vertex.
class CycleError : public std::invalid_argument {
 public:
  CycleError(const std::string& what, std::size_t index)
      : std::invalid_argument(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Directed Hamiltonian cycle of the n-cube; vertices()[k] -> vertices()[k+1]
/// with wrap-around.
class HamiltonianCycle {
 public:
  HamiltonianCycle(int n, std::vector<Word> vertices);

  int bits() const noexcept { return n_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  std::span<const Word> vertices() const noexcept { return vertices_; }

  HamiltonianCycle reversed() const;
  /// Same cycle, rotated so that `start` comes first.
  HamiltonianCycle rotatedTo(Word start) const;

  friend bool operator==(const HamiltonianCycle&, const HamiltonianCycle&) = default;

 private:
  int n_;
  std::vector<Word> vertices_;
};

HamiltonianCycle grayToCycle(const GrayCode& code);
GrayCode cycleToGray(const HamiltonianCycle& cycle);

/// Every vertex x with cycle successor x ^ e keeps bit e and negates all other
/// bits, so the arc x -> successor becomes a self-loop and is removed from the
/// cube.
BooleanMap removeCycle(const HamiltonianCycle& cycle);

/// Raised by recoverRemovedPermutation when some vertex does not have exactly
/// one fixed component.
class MapShapeError : public std::invalid_argument {
 public:
  MapShapeError(const std::string& what, Word vertex)
      : std::invalid_argument(what), vertex_(vertex) {}
  Word vertex() const noexcept { return vertex_; }

 private:
  Word vertex_;
};

/// Cycle structure of the removed-arc permutation x -> x ^ e_{i(x)}.
struct RemovedPermutation {
  int n = 0;
  /// Disjoint cycles, each starting at its smallest vertex, ordered by that vertex.
  std::vector<std::vector<Word>> cycles;

  bool isHamiltonian() const { return cycles.size() == 1 && cycles[0].size() == stateCount(n); }
  std::optional<HamiltonianCycle> hamiltonianCycle() const;
};

RemovedPermutation recoverRemovedPermutation(const BooleanMap& f);

/// Gamma(f): n outgoing arc slots per vertex, slot i holding F_f(i, x).
class IterationGraph {
 public:
  IterationGraph(int n, std::vector<Word> targets);

  int bits() const noexcept { return n_; }
  std::size_t vertexCount() const noexcept { return stateCount(n_); }
  std::span<const Word> successors(Word x) const {
    return std::span<const Word>(targets_).subspan(static_cast<std::size_t>(x) * n_,
                                                   static_cast<std::size_t>(n_));
  }
  std::size_t arcSlots() const noexcept { return targets_.size(); }
  std::size_t selfLoops() const;

 private:
  int n_;
  std::vector<Word> targets_;
};

IterationGraph buildIterationGraph(const BooleanMap& f);

struct Connectivity {
  bool strong = false;
  std::size_t componentCount = 0;
  /// Lexicographically smallest (from, to) with `to` unreachable from `from`.
  std::optional<std::pair<Word, Word>> witness;
};

/// Strongly connected components via iterative Tarjan; component ids are
/// returned in the order components are completed.
std::vector<std::size_t> stronglyConnectedComponents(const IterationGraph& g,
                                                     std::size_t* count = nullptr);
Connectivity isStronglyConnected(const IterationGraph& g);

/// "[a,b,...]" with 2^n decimal images.
BooleanMap parseFunctionTable(std::string_view text);
std::string formatFunctionTable(const BooleanMap& f);

}  // namespace cubewalk
