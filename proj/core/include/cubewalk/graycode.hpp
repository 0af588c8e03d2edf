#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cubewalk/word.hpp"

namespace cubewalk {

using BigCount = boost::multiprecision::cpp_int;

/// Raised when a sequence of transitions or codewords is not a cyclic Gray code.
/// `position()` is the 0-based index of the first violation.
class GrayCodeError : public std::invalid_argument {
 public:
  GrayCodeError(const std::string& what, std::size_t position)
      : std::invalid_argument(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Bit positions flipped along a cyclic Gray code. Index i toggles the bit of
/// value 2^(i-1); the walk starting from any word visits all 2^n words and
/// returns to it.
class TransitionSequence {
 public:
  TransitionSequence(int n, std::vector<int> items);

  int bits() const noexcept { return n_; }
  std::size_t size() const noexcept { return items_.size(); }
  std::span<const int> items() const noexcept { return items_; }
  int operator[](std::size_t k) const { return items_[k]; }

  friend bool operator==(const TransitionSequence&, const TransitionSequence&) = default;
  friend auto operator<=>(const TransitionSequence&, const TransitionSequence&) = default;

 private:
  int n_;
  std::vector<int> items_;
};

/// Cyclic ordering of all 2^n codewords, consecutive words one bit apart.
class GrayCode {
 public:
  GrayCode(int n, std::vector<Word> words);

  int bits() const noexcept { return n_; }
  std::size_t size() const noexcept { return words_.size(); }
  std::span<const Word> words() const noexcept { return words_; }
  Word operator[](std::size_t k) const { return words_[k]; }

  friend bool operator==(const GrayCode&, const GrayCode&) = default;

 private:
  int n_;
  std::vector<Word> words_;
};

struct TransitionCount {
  int n = 0;
  std::vector<std::uint64_t> counts;  // counts[i - 1] for bit index i

  std::uint64_t operator()(int i) const { return counts.at(static_cast<std::size_t>(i - 1)); }
  std::uint64_t total() const;
};

enum class Balance { TotallyBalanced, Balanced, Unbalanced };

std::string_view toString(Balance b);

/// True for TotallyBalanced and Balanced.
inline bool isBalanced(Balance b) { return b != Balance::Unbalanced; }

GrayCode reflectedGray(int n);

TransitionSequence toTransitions(const GrayCode& code);
GrayCode fromTransitions(const TransitionSequence& seq, Word start = 0);

TransitionCount transitionCount(const TransitionSequence& seq);
Balance classifyBalance(const TransitionCount& tc);

/// Largest even l with l <= 2^n / n.
int chooseL(int n);

/// Split of an (n-2)-bit transition sequence into l special elements and the
/// blocks between them:
///   base = s_{i_1}, u_0, s_{i_2}, u_1, ..., s_{i_{l-1}}, u_{l-2}, s_{i_l}, v
/// with i_1 = 1, i_2 = 2 (so u_0 is always empty).
class Decomposition {
 public:
  /// `positions` are the 1-based indices i_1 < ... < i_l into `base`.
  Decomposition(std::shared_ptr<const TransitionSequence> base, std::vector<std::size_t> positions);

  const TransitionSequence& base() const noexcept { return *base_; }
  int l() const noexcept { return static_cast<int>(positions_.size()); }
  std::span<const std::size_t> positions() const noexcept { return positions_; }

  /// s_{i_k}, k in [1, l].
  int special(int k) const { return (*base_)[positions_.at(static_cast<std::size_t>(k - 1)) - 1]; }
  /// u_k, k in [0, l - 2].
  std::span<const int> block(int k) const;
  std::span<const int> tail() const;

  /// Concatenation of specials, blocks and tail; equals base().items().
  std::vector<int> reassemble() const;

 private:
  std::shared_ptr<const TransitionSequence> base_;
  std::vector<std::size_t> positions_;
};

/// Lexicographic enumeration of every decomposition of `base` with l special
/// elements: all choices of i_3 < ... < i_l from positions 3..|base|.
class DecompositionEnumerator {
 public:
  DecompositionEnumerator(std::shared_ptr<const TransitionSequence> base, int l);

  std::optional<Decomposition> next();

  /// C(|base| - 2, l - 2).
  BigCount total() const;

 private:
  std::shared_ptr<const TransitionSequence> base_;
  std::vector<std::size_t> positions_;
  bool done_ = false;
};

enum class DegenerateTerm { Include, Exclude };

/// Sum over l' of C(2^(n-2) - 2, 2l' - 2). With DegenerateTerm::Exclude the
/// l' = 1 term is dropped.
BigCount countAllDecompositions(int n, DegenerateTerm term = DegenerateTerm::Include);
/// C(2^(n-2) - 2, chooseL(n) - 2).
BigCount countFixedLDecompositions(int n);

/// Builds an n-bit cyclic Gray code transition sequence from a decomposition of
/// an (n-2)-bit one. The result always satisfies TC(n-1) = TC(n) = l; any
/// violation is reported as std::logic_error.
TransitionSequence constructionB(const Decomposition& d);

struct BalancedCandidate {
  TransitionSequence sequence;
  TransitionCount count;
  Balance balance;
};

struct GenerateOptions {
  /// Maximum number of decompositions examined; nullopt means all.
  std::optional<std::size_t> limit;
  bool totallyBalancedOnly = false;
  int jobs = 1;
};

struct GenerateResult {
  std::vector<BalancedCandidate> candidates;
  std::size_t examined = 0;    // decompositions tried at this level
  std::size_t duplicates = 0;  // balanced outputs equal to an earlier one
};

/// Induction n-2 -> n from reflectedGray(2) or reflectedGray(3), with l =
/// chooseL(n). Intermediate levels reuse the balanced codes found for n-2.
/// Output order is the lexicographic decomposition order, independent of jobs.
GenerateResult generateBalanced(int n, const GenerateOptions& options = {});

// Text forms: comma-separated decimal values, n inferred from the length.
std::string formatSequence(const TransitionSequence& seq);
TransitionSequence parseSequence(std::string_view text);
std::string formatWords(const GrayCode& code);
GrayCode parseWords(std::string_view text);

}  // namespace cubewalk
