#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubewalk/cubefunc.hpp"
#include "cubewalk/graycode.hpp"

namespace cubewalk::oracle {

/// Every Hamiltonian cycle of the n-cube (n in 2..4) once: starting at 0, with
/// the second vertex smaller than the last. `neighbourOrder` permutes the bit
/// order tried during the search (identity when empty); the set found does
/// not depend on it, only the emission order does.
void enumerateHamiltonianCycles(int n, const std::function<void(const HamiltonianCycle&)>& visit,
                                std::vector<int> neighbourOrder = {});
std::vector<HamiltonianCycle> hamiltonianCycles(int n, std::vector<int> neighbourOrder = {},
                                                int jobs = 1);

/// Raised when a cycle removal is not doubly stochastic or not strongly connected.
class TheoremViolation : public std::runtime_error {
 public:
  TheoremViolation(const std::string& what, HamiltonianCycle cycle)
      : std::runtime_error(what), cycle_(std::move(cycle)) {}
  const HamiltonianCycle& cycle() const noexcept { return cycle_; }

 private:
  HamiltonianCycle cycle_;
};

struct TheoremSummary {
  int n = 0;
  std::size_t cycles = 0;          // undirected, canonical
  std::size_t orientations = 0;    // directed removals checked (2 per cycle)
  std::size_t doublyStochastic = 0;
  std::size_t stronglyConnected = 0;
};

/// removeCycle -> markovOf -> exact double-stochasticity, and strong
/// connectivity of Gamma, for both orientations of every cycle.
TheoremSummary verifyTheorems(int n, int jobs = 1);

/// Start at 0 and orient so that the second vertex is below the last one.
HamiltonianCycle canonical(const HamiltonianCycle& cycle);

struct FunctionCount {
  std::size_t sequences = 0;  // balanced outputs of the generation pipeline
  std::size_t functions = 0;  // distinct image tables among them
};

/// Runs the full balanced-code pipeline for n and counts distinct maps.
FunctionCount countBalancedFunctions(int n, int jobs = 1);

/// One cycle per line, comma-separated vertex integers.
std::string formatCycles(const std::vector<HamiltonianCycle>& cycles);

}  // namespace cubewalk::oracle
