#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "cubewalk/cubefunc.hpp"
#include "cubewalk/graycode.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cubewalk;
using namespace cubewalk::testing;

namespace {

// Component count via transitive closure (Floyd-Warshall), independent of Tarjan.
std::size_t closureComponents(const IterationGraph& g) {
  const std::size_t n = g.vertexCount();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (Word x = 0; x < n; ++x) {
    reach[x][x] = true;
    for (Word y : g.successors(x)) reach[x][y] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  std::vector<bool> assigned(n, false);
  std::size_t components = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (assigned[i]) continue;
    ++components;
    for (std::size_t j = 0; j < n; ++j) {
      if (reach[i][j] && reach[j][i]) assigned[j] = true;
    }
  }
  return components;
}

BooleanMap identityMap(int n) {
  std::vector<Word> images(stateCount(n));
  std::iota(images.begin(), images.end(), Word{0});
  return BooleanMap(n, images);
}

}  // namespace

TEST_CASE("applyComponent") {
  const auto f = fStar();
  CHECK(applyComponent(f, 3, 0b000) == 0b001);
  CHECK(applyComponent(f, 1, 0b000) == 0b000);
  CHECK(applyComponent(f, 2, 0b000) == 0b010);
  // f_i(x) = x_i leaves x alone.
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Word> images(32);
    for (auto& v : images) v = rng() % 32;
    const BooleanMap g(5, images);
    const Word x = rng() % 32;
    for (int i = 1; i <= 5; ++i) {
      const Word mask = Word{1} << (5 - i);
      if ((g(x) & mask) == (x & mask)) CHECK(applyComponent(g, i, x) == x);
      CHECK(popcount(applyComponent(g, i, x) ^ x) <= 1);
    }
  }
  CHECK_THROWS_AS(applyComponent(f, 0, 0), std::out_of_range);
  CHECK_THROWS_AS(applyComponent(f, 4, 0), std::out_of_range);
}

TEST_CASE("Gray code and cycle views") {
  const auto cycle = grayToCycle(GrayCode(3, kLStar));
  CHECK(toVector(cycle.vertices()) == std::vector<Word>{0, 4, 5, 1, 3, 7, 6, 2});
  const GrayCode l4(4, kL4);
  CHECK(cycleToGray(grayToCycle(l4)) == l4);
  try {
    HamiltonianCycle(2, {0, 3, 1, 2});
    FAIL("accepted 00 -> 11");
  } catch (const CycleError& e) {
    CHECK(e.index() == 0);
  }
  CHECK_THROWS_AS(HamiltonianCycle(3, {0, 3, 1, 5, 4, 6, 7, 2}), CycleError);
  CHECK(cycle.reversed().vertices()[1] == 2);
  CHECK(cycle.rotatedTo(7).vertices()[0] == 7);
}

TEST_CASE("removeCycle on the square") {
  // 00 -> 10 -> 11 -> 01
  const auto f = removeCycle(HamiltonianCycle(2, {0b00, 0b10, 0b11, 0b01}));
  CHECK(f(0b00) == 0b01);
  CHECK(f(0b10) == 0b00);
  CHECK(f(0b11) == 0b10);
  CHECK(f(0b01) == 0b11);
  // Each removed arc becomes the self-loop of its tail vertex.
  const HamiltonianCycle c(2, {0b00, 0b10, 0b11, 0b01});
  for (std::size_t k = 0; k < 4; ++k) {
    const Word x = c.vertices()[k];
    const Word y = c.vertices()[(k + 1) % 4];
    const int bit = __builtin_ctz(x ^ y);
    CHECK(applyComponent(f, 2 - bit, x) == x);
  }
}

TEST_CASE("removeCycle shape on 4-bit cycles") {
  std::vector<HamiltonianCycle> cycles{grayToCycle(GrayCode(4, kL4)),
                                       grayToCycle(reflectedGray(4))};
  cycles.push_back(cycles[0].reversed());
  cycles.push_back(cycles[1].rotatedTo(9));
  for (const auto& c : cycles) {
    const auto f = removeCycle(c);
    const int n = f.bits();
    for (Word x = 0; x < f.size(); ++x) {
      int fixed = 0;
      std::set<Word> targets;
      for (int i = 1; i <= n; ++i) {
        const Word y = applyComponent(f, i, x);
        if (y == x) {
          ++fixed;
        } else {
          targets.insert(y);
        }
      }
      CHECK(fixed == 1);
      CHECK(targets.size() == static_cast<std::size_t>(n - 1));
    }
    const auto recovered = recoverRemovedPermutation(f);
    REQUIRE(recovered.isHamiltonian());
    CHECK(*recovered.hamiltonianCycle() == c.rotatedTo(0));
  }
}

TEST_CASE("recovering the removed permutation") {
  SUBCASE("the f* formula removes two 4-cycles") {
    const auto r = recoverRemovedPermutation(fStar());
    CHECK_FALSE(r.isHamiltonian());
    REQUIRE(r.cycles.size() == 2);
    CHECK(r.cycles[0] == std::vector<Word>{0b000, 0b100, 0b110, 0b010});
    CHECK(r.cycles[1] == std::vector<Word>{0b001, 0b011, 0b111, 0b101});
  }
  SUBCASE("the stated cycle does not produce f*") {
    const auto fromCycle = removeCycle(grayToCycle(GrayCode(3, kLStar)));
    CHECK(fromCycle != fStar());
  }
  SUBCASE("profile a removes the L4 cycle") {
    const auto r = recoverRemovedPermutation(BooleanMap(4, kProfileA));
    REQUIRE(r.isHamiltonian());
    CHECK(r.cycles[0] == kL4);
  }
  SUBCASE("maps of the wrong shape") {
    try {
      recoverRemovedPermutation(identityMap(3));
      FAIL("identity accepted");
    } catch (const MapShapeError& e) {
      CHECK(e.vertex() == 0);
    }
    // Removed arcs 00->01, 01->00, 10->00, 11->01: 00 is hit twice.
    try {
      recoverRemovedPermutation(BooleanMap(2, {0b10, 0b11, 0b11, 0b10}));
      FAIL("non-permutation accepted");
    } catch (const MapShapeError& e) {
      CHECK(e.vertex() == 2);
    }
  }
}

TEST_CASE("iteration graphs") {
  const auto g = buildIterationGraph(fStar());
  CHECK(g.arcSlots() == 24);
  CHECK(g.selfLoops() == 8);
  for (Word x = 0; x < 8; ++x) {
    for (int i = 1; i <= 3; ++i) {
      CHECK(g.successors(x)[static_cast<std::size_t>(i - 1)] == applyComponent(fStar(), i, x));
    }
  }
  const auto id = buildIterationGraph(identityMap(4));
  CHECK(id.selfLoops() == id.arcSlots());
  const auto square = buildIterationGraph(removeCycle(HamiltonianCycle(2, {0, 2, 3, 1})));
  for (Word x = 0; x < 4; ++x) CHECK(square.successors(x).size() == 2);
}

TEST_CASE("strong connectivity") {
  CHECK(isStronglyConnected(buildIterationGraph(fStar())).strong);

  const auto id = isStronglyConnected(buildIterationGraph(identityMap(3)));
  CHECK_FALSE(id.strong);
  CHECK(id.componentCount == 8);
  REQUIRE(id.witness);
  CHECK(*id.witness == std::pair<Word, Word>{0, 1});

  // Constant map to 0 at n=2: from 00 nothing but 00 is reachable.
  const auto constant = isStronglyConnected(buildIterationGraph(BooleanMap(2, {0, 0, 0, 0})));
  CHECK_FALSE(constant.strong);
  CHECK(*constant.witness == std::pair<Word, Word>{0, 1});

  // Tarjan agrees with the transitive-closure count on random maps.
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<Word> images(stateCount(n));
    for (auto& v : images) v = rng() & allOnes(n);
    const auto graph = buildIterationGraph(BooleanMap(n, images));
    std::size_t count = 0;
    stronglyConnectedComponents(graph, &count);
    CHECK(count == closureComponents(graph));
  }
}

TEST_CASE("function table text") {
  const auto f = parseFunctionTable("[13,10,9,14,3,11,1,12,15,4,7,5,2,6,0,8]");
  CHECK(f.bits() == 4);
  CHECK(f(3) == 14);
  CHECK(formatFunctionTable(f) == "[13,10,9,14,3,11,1,12,15,4,7,5,2,6,0,8]");
  CHECK(parseFunctionTable(" [13, 10, 9, 14, 3, 11, 1, 12, 15, 4, 7, 5, 2, 6, 0, 8] ") == f);

  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    std::vector<Word> images(stateCount(n));
    for (auto& v : images) v = rng() & allOnes(n);
    const BooleanMap g(n, images);
    CHECK(parseFunctionTable(formatFunctionTable(g)) == g);
  }

  CHECK_THROWS_AS(parseFunctionTable("[0,1,2]"), std::invalid_argument);
  CHECK_THROWS_AS(parseFunctionTable("[0,1,2,4]"), std::invalid_argument);
  CHECK_THROWS_AS(parseFunctionTable("0,1,2,3"), std::invalid_argument);
  CHECK_THROWS_AS(parseFunctionTable("[0,1,,3]"), std::invalid_argument);
  CHECK_THROWS_AS(parseFunctionTable("[]"), std::invalid_argument);
  CHECK_THROWS_AS(parseFunctionTable("[0]"), std::invalid_argument);
}
