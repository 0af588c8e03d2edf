#include <algorithm>
#include <limits>
#include <queue>

#include "cubewalk/cubefunc.hpp"

namespace cubewalk {

namespace {

constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();

std::optional<std::pair<Word, Word>> smallestUnreachablePair(const IterationGraph& g) {
  const std::size_t count = g.vertexCount();
  std::vector<bool> reached(count);
  std::queue<Word> frontier;
  for (Word from = 0; from < count; ++from) {
    std::fill(reached.begin(), reached.end(), false);
    reached[from] = true;
    frontier.push(from);
    while (!frontier.empty()) {
      const Word x = frontier.front();
      frontier.pop();
      for (Word y : g.successors(x)) {
        if (!reached[y]) {
          reached[y] = true;
          frontier.push(y);
        }
      }
    }
    const auto miss = std::find(reached.begin(), reached.end(), false);
    if (miss != reached.end()) {
      return std::pair{from, static_cast<Word>(miss - reached.begin())};
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::size_t> stronglyConnectedComponents(const IterationGraph& g, std::size_t* count) {
  const std::size_t vertices = g.vertexCount();
  std::vector<std::size_t> index(vertices, kUnvisited);
  std::vector<std::size_t> low(vertices, 0);
  std::vector<std::size_t> component(vertices, kUnvisited);
  std::vector<bool> onStack(vertices, false);
  std::vector<Word> stack;
  std::size_t nextIndex = 0;
  std::size_t components = 0;

  struct Frame {
    Word vertex;
    std::size_t slot;
  };
  std::vector<Frame> calls;

  for (Word root = 0; root < vertices; ++root) {
    if (index[root] != kUnvisited) continue;
    calls.push_back({root, 0});
    index[root] = low[root] = nextIndex++;
    stack.push_back(root);
    onStack[root] = true;

    while (!calls.empty()) {
      auto& frame = calls.back();
      const Word v = frame.vertex;
      const auto next = g.successors(v);
      if (frame.slot < next.size()) {
        const Word w = next[frame.slot++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = nextIndex++;
          stack.push_back(w);
          onStack[w] = true;
          calls.push_back({w, 0});
        } else if (onStack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        Word w;
        do {
          w = stack.back();
          stack.pop_back();
          onStack[w] = false;
          component[w] = components;
        } while (w != v);
        ++components;
      }
      calls.pop_back();
      if (!calls.empty()) {
        const Word parent = calls.back().vertex;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  if (count) *count = components;
  return component;
}

Connectivity isStronglyConnected(const IterationGraph& g) {
  Connectivity result;
  stronglyConnectedComponents(g, &result.componentCount);
  result.strong = result.componentCount == 1;
  if (!result.strong) result.witness = smallestUnreachablePair(g);
  return result;
}

}  // namespace cubewalk
