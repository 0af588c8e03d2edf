#include <algorithm>
#include <set>

#include "cubewalk/graycode.hpp"
#include "parallel.hpp"

namespace cubewalk {

namespace {

BigCount binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigCount result = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    result *= n - k + j;
    result /= j;
  }
  return result;
}

void checkFeasible(std::size_t baseLength, int l) {
  if (l < 4 || l % 2 != 0) {
    throw std::invalid_argument("l must be an even integer >= 4, got " + std::to_string(l));
  }
  if (static_cast<std::size_t>(l) > baseLength) {
    throw std::invalid_argument("l = " + std::to_string(l) + " exceeds the base length " +
                                std::to_string(baseLength));
  }
}

// u, x, reverse(u), y, u; just x, y when u is empty.
void appendExpanded(std::vector<int>& out, std::span<const int> u, int x, int y) {
  out.insert(out.end(), u.begin(), u.end());
  out.push_back(x);
  out.insert(out.end(), u.rbegin(), u.rend());
  out.push_back(y);
  out.insert(out.end(), u.begin(), u.end());
}

}  // namespace

Decomposition::Decomposition(std::shared_ptr<const TransitionSequence> base,
                             std::vector<std::size_t> positions)
    : base_(std::move(base)), positions_(std::move(positions)) {
  if (!base_) throw std::invalid_argument("decomposition needs a base sequence");
  checkFeasible(base_->size(), static_cast<int>(positions_.size()));
  if (positions_[0] != 1 || positions_[1] != 2) {
    throw std::invalid_argument("decomposition must start with positions 1, 2");
  }
  for (std::size_t k = 1; k < positions_.size(); ++k) {
    if (positions_[k] <= positions_[k - 1] || positions_[k] > base_->size()) {
      throw std::invalid_argument("decomposition positions must increase within [1, " +
                                  std::to_string(base_->size()) + "]");
    }
  }
}

std::span<const int> Decomposition::block(int k) const {
  if (k < 0 || k > l() - 2) throw std::out_of_range("block index " + std::to_string(k));
  const auto items = base_->items();
  const std::size_t from = positions_[static_cast<std::size_t>(k)];      // just past s_{i_{k+1}}
  const std::size_t to = positions_[static_cast<std::size_t>(k) + 1] - 1;  // s_{i_{k+2}}
  return items.subspan(from, to - from);
}

std::span<const int> Decomposition::tail() const {
  return base_->items().subspan(positions_.back());
}

std::vector<int> Decomposition::reassemble() const {
  std::vector<int> out;
  out.reserve(base_->size());
  for (int k = 1; k <= l(); ++k) {
    out.push_back(special(k));
    const auto u = k <= l() - 1 ? block(k - 1) : tail();
    out.insert(out.end(), u.begin(), u.end());
  }
  return out;
}

DecompositionEnumerator::DecompositionEnumerator(std::shared_ptr<const TransitionSequence> base,
                                                 int l)
    : base_(std::move(base)) {
  if (!base_) throw std::invalid_argument("decomposition needs a base sequence");
  checkFeasible(base_->size(), l);
  positions_.resize(static_cast<std::size_t>(l));
  for (std::size_t k = 0; k < positions_.size(); ++k) positions_[k] = k + 1;
}

std::optional<Decomposition> DecompositionEnumerator::next() {
  if (done_) return std::nullopt;
  Decomposition current(base_, positions_);

  // Advance i_3..i_l to the next combination of {3..N} in lexicographic order.
  const std::size_t length = base_->size();
  const std::size_t l = positions_.size();
  std::size_t k = l;
  while (k > 2) {
    --k;
    if (positions_[k] < length - (l - 1 - k)) {
      ++positions_[k];
      for (std::size_t j = k + 1; j < l; ++j) positions_[j] = positions_[j - 1] + 1;
      return current;
    }
  }
  done_ = true;
  return current;
}

BigCount DecompositionEnumerator::total() const {
  return binomial(base_->size() - 2, positions_.size() - 2);
}

BigCount countAllDecompositions(int n, DegenerateTerm term) {
  requireBits(n, 4, 62, "countAllDecompositions");
  const std::uint64_t free = (std::uint64_t{1} << (n - 2)) - 2;
  const std::uint64_t terms = std::uint64_t{1} << (n - 3);
  BigCount sum = 0;
  for (std::uint64_t lp = term == DegenerateTerm::Include ? 1 : 2; lp <= terms; ++lp) {
    sum += binomial(free, 2 * lp - 2);
  }
  return sum;
}

BigCount countFixedLDecompositions(int n) {
  requireBits(n, 4, 30, "countFixedLDecompositions");
  const std::uint64_t free = (std::uint64_t{1} << (n - 2)) - 2;
  return binomial(free, static_cast<std::uint64_t>(chooseL(n) - 2));
}

TransitionSequence constructionB(const Decomposition& d) {
  const int n = d.base().bits() + 2;
  const int l = d.l();
  const int hi = n;
  const int lo = n - 1;

  // U: specials with blocks replaced; u_0 -> (n-1), u_k -> u'(u_k, x, y) with
  // (x, y) alternating between (n-1, n) for odd k and (n, n-1) for even k.
  std::vector<int> u;
  u.reserve(stateCount(n));
  for (int k = 1; k <= l; ++k) {
    u.push_back(d.special(k));
    if (k == 1) {
      u.push_back(lo);
    } else if (k < l) {
      const int block = k - 1;
      if (block % 2 == 1) {
        appendExpanded(u, d.block(block), lo, hi);
      } else {
        appendExpanded(u, d.block(block), hi, lo);
      }
    }
  }
  const auto v = d.tail();
  u.insert(u.end(), v.begin(), v.end());

  // S_n = reverse(U), reverse(v), n, v, s_1, n-1, s_2..s_N, n
  std::vector<int> out(u.rbegin(), u.rend());
  out.insert(out.end(), v.rbegin(), v.rend());
  out.push_back(hi);
  out.insert(out.end(), v.begin(), v.end());
  const auto base = d.base().items();
  out.push_back(base[0]);
  out.push_back(lo);
  out.insert(out.end(), base.begin() + 1, base.end());
  out.push_back(hi);

  std::optional<TransitionSequence> result;
  try {
    result.emplace(n, std::move(out));
  } catch (const GrayCodeError& e) {
    throw std::logic_error(std::string("construction produced an invalid Gray code: ") + e.what());
  }
  const auto tc = transitionCount(*result);
  if (tc(n - 1) != static_cast<std::uint64_t>(l) || tc(n) != static_cast<std::uint64_t>(l)) {
    throw std::logic_error("construction produced TC(n-1)=" + std::to_string(tc(n - 1)) +
                           ", TC(n)=" + std::to_string(tc(n)) + ", expected " +
                           std::to_string(l));
  }
  return std::move(*result);
}

namespace {

constexpr std::size_t kBatch = 4096;

struct LevelState {
  std::size_t remaining;  // decompositions still allowed, SIZE_MAX when unlimited
  std::size_t examined = 0;
  std::size_t duplicates = 0;
};

std::vector<BalancedCandidate> runLevel(int n, const std::vector<TransitionSequence>& bases,
                                        const GenerateOptions& options, LevelState& state) {
  const int l = chooseL(n);
  std::vector<BalancedCandidate> found;
  std::set<std::vector<int>> seen;
  for (const auto& b : bases) {
    auto base = std::make_shared<const TransitionSequence>(b);
    if (static_cast<std::size_t>(l) > base->size()) continue;
    DecompositionEnumerator decompositions(base, l);
    bool exhausted = false;
    while (!exhausted && state.remaining > 0) {
      std::vector<Decomposition> batch;
      while (batch.size() < std::min(kBatch, state.remaining)) {
        auto d = decompositions.next();
        if (!d) {
          exhausted = true;
          break;
        }
        batch.push_back(std::move(*d));
      }
      state.remaining -= batch.size();
      state.examined += batch.size();

      std::vector<std::optional<BalancedCandidate>> results(batch.size());
      detail::parallelFor(batch.size(), options.jobs, [&](std::size_t i) {
        auto seq = constructionB(batch[i]);
        auto tc = transitionCount(seq);
        const auto balance = classifyBalance(tc);
        const bool keep = options.totallyBalancedOnly ? balance == Balance::TotallyBalanced
                                                      : isBalanced(balance);
        if (keep) results[i] = BalancedCandidate{std::move(seq), std::move(tc), balance};
      });
      for (auto& r : results) {
        if (!r) continue;
        const auto items = r->sequence.items();
        if (!seen.emplace(items.begin(), items.end()).second) {
          ++state.duplicates;
          continue;
        }
        found.push_back(std::move(*r));
      }
    }
  }
  return found;
}

std::vector<TransitionSequence> seedsFor(int n, const GenerateOptions& options) {
  if (n - 2 <= 3) return {toTransitions(reflectedGray(n - 2))};
  GenerateOptions sub = options;
  sub.totallyBalancedOnly = false;
  auto lower = generateBalanced(n - 2, sub);
  std::vector<TransitionSequence> seeds;
  seeds.reserve(lower.candidates.size());
  for (auto& c : lower.candidates) seeds.push_back(std::move(c.sequence));
  return seeds;
}

}  // namespace

GenerateResult generateBalanced(int n, const GenerateOptions& options) {
  requireBits(n, 4, 8, "generateBalanced");
  const auto seeds = seedsFor(n, options);
  LevelState state{options.limit.value_or(SIZE_MAX)};
  GenerateResult result;
  result.candidates = runLevel(n, seeds, options, state);
  result.examined = state.examined;
  result.duplicates = state.duplicates;
  return result;
}

}  // namespace cubewalk
