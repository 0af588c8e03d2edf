#include "cubewalk/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cubewalk/markov.hpp"
#include "parallel.hpp"
#include "text.hpp"

namespace cubewalk::oracle {

namespace {

std::vector<int> checkedOrder(int n, std::vector<int> order) {
  if (order.empty()) {
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
  }
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> identity(static_cast<std::size_t>(n));
  std::iota(identity.begin(), identity.end(), 0);
  if (sorted != identity) throw std::invalid_argument("neighbour order must permute 0..n-1");
  return order;
}

class Search {
 public:
  Search(int n, std::vector<int> order, const std::function<void(const HamiltonianCycle&)>& visit)
      : n_(n), order_(std::move(order)), visit_(visit), visited_(stateCount(n), false) {}

  // All cycles whose second vertex is `second`.
  void runFrom(Word second) {
    path_ = {0, second};
    visited_[0] = visited_[second] = true;
    extend();
    visited_[0] = visited_[second] = false;
  }

 private:
  void extend() {
    const std::size_t total = stateCount(n_);
    const Word last = path_.back();
    if (path_.size() == total) {
      // Closing edge back to 0, and the orientation tie-break.
      if (popcount(last) == 1 && path_[1] < last) visit_(HamiltonianCycle(n_, path_));
      return;
    }
    for (int bit : order_) {
      const Word next = last ^ (Word{1} << bit);
      if (visited_[next]) continue;
      visited_[next] = true;
      path_.push_back(next);
      extend();
      path_.pop_back();
      visited_[next] = false;
    }
  }

  int n_;
  std::vector<int> order_;
  const std::function<void(const HamiltonianCycle&)>& visit_;
  std::vector<bool> visited_;
  std::vector<Word> path_;
};

bool lexLess(const HamiltonianCycle& a, const HamiltonianCycle& b) {
  const auto va = a.vertices();
  const auto vb = b.vertices();
  return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

}  // namespace

void enumerateHamiltonianCycles(int n, const std::function<void(const HamiltonianCycle&)>& visit,
                                std::vector<int> neighbourOrder) {
  requireBits(n, 2, 4, "Hamiltonian cycle enumeration");
  const auto order = checkedOrder(n, std::move(neighbourOrder));
  Search search(n, order, visit);
  for (int bit : order) search.runFrom(Word{1} << bit);
}

std::vector<HamiltonianCycle> hamiltonianCycles(int n, std::vector<int> neighbourOrder, int jobs) {
  requireBits(n, 2, 4, "Hamiltonian cycle enumeration");
  const auto order = checkedOrder(n, std::move(neighbourOrder));
  // One independent subtree per choice of second vertex.
  std::vector<std::vector<HamiltonianCycle>> branches(order.size());
  detail::parallelFor(order.size(), jobs, [&](std::size_t k) {
    const std::function<void(const HamiltonianCycle&)> collect =
        [&branches, k](const HamiltonianCycle& c) { branches[k].push_back(c); };
    Search search(n, order, collect);
    search.runFrom(Word{1} << order[k]);
  });
  std::vector<HamiltonianCycle> all;
  for (auto& b : branches) std::move(b.begin(), b.end(), std::back_inserter(all));
  std::sort(all.begin(), all.end(), lexLess);
  return all;
}

HamiltonianCycle canonical(const HamiltonianCycle& cycle) {
  auto c = cycle.rotatedTo(0);
  const auto v = c.vertices();
  return v[1] < v.back() ? c : c.reversed();
}

TheoremSummary verifyTheorems(int n, int jobs) {
  const auto cycles = hamiltonianCycles(n, {}, jobs);
  TheoremSummary summary{n, cycles.size(), 0, 0, 0};

  struct Outcome {
    bool doublyStochastic[2];
    bool strong[2];
  };
  std::vector<Outcome> outcomes(cycles.size());
  detail::parallelFor(cycles.size(), jobs, [&](std::size_t k) {
    const HamiltonianCycle directed[2] = {cycles[k], cycles[k].reversed()};
    for (int o = 0; o < 2; ++o) {
      const auto graph = buildIterationGraph(removeCycle(directed[o]));
      outcomes[k].doublyStochastic[o] = isDoublyStochastic(markovOf(graph));
      outcomes[k].strong[o] = isStronglyConnected(graph).strong;
    }
  });
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    for (int o = 0; o < 2; ++o) {
      const auto directed = o == 0 ? cycles[k] : cycles[k].reversed();
      const auto label = detail::joinDecimal(directed.vertices());
      if (!outcomes[k].doublyStochastic[o]) {
        throw TheoremViolation("removal of cycle " + label + " is not doubly stochastic", directed);
      }
      if (!outcomes[k].strong[o]) {
        throw TheoremViolation("removal of cycle " + label + " is not strongly connected",
                               directed);
      }
      ++summary.orientations;
      ++summary.doublyStochastic;
      ++summary.stronglyConnected;
    }
  }
  return summary;
}

FunctionCount countBalancedFunctions(int n, int jobs) {
  GenerateOptions options;
  options.jobs = jobs;
  const auto generated = generateBalanced(n, options);
  std::set<BooleanMap> maps;
  for (const auto& c : generated.candidates) {
    maps.insert(removeCycle(grayToCycle(fromTransitions(c.sequence, 0))));
  }
  return FunctionCount{generated.candidates.size(), maps.size()};
}

std::string formatCycles(const std::vector<HamiltonianCycle>& cycles) {
  std::string out;
  for (const auto& c : cycles) {
    out += detail::joinDecimal(c.vertices());
    out += '\n';
  }
  return out;
}

}  // namespace cubewalk::oracle
