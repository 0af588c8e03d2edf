#include "cubewalk/graycode.hpp"

#include <algorithm>

#include "text.hpp"

namespace cubewalk {

namespace {

// Sequences are materialised in full, so keep n where 2^n ints is reasonable.
constexpr int kMaxGrayBits = 20;

void validateTransitions(int n, const std::vector<int>& items) {
  requireBits(n, 1, kMaxGrayBits, "transition sequence");
  const std::size_t length = stateCount(n);
  if (items.size() != length) {
    throw GrayCodeError("transition sequence for n=" + std::to_string(n) + " must have " +
                            std::to_string(length) + " items, got " +
                            std::to_string(items.size()),
                        std::min(items.size(), length));
  }
  std::vector<bool> seen(length, false);
  Word x = 0;
  seen[0] = true;
  for (std::size_t k = 0; k < length; ++k) {
    const int i = items[k];
    if (i < 1 || i > n) {
      throw GrayCodeError("position " + std::to_string(k) + ": bit index " + std::to_string(i) +
                              " outside [1, " + std::to_string(n) + "]",
                          k);
    }
    x ^= transitionMask(i);
    if (k + 1 == length) break;
    if (seen[x]) {
      throw GrayCodeError("position " + std::to_string(k) + ": revisits word " +
                              toBinary(x, n),
                          k);
    }
    seen[x] = true;
  }
  if (x != 0) {
    throw GrayCodeError("last transition does not return to the starting word", length - 1);
  }
}

void validateWords(int n, const std::vector<Word>& words) {
  requireBits(n, 1, kMaxGrayBits, "Gray code");
  const std::size_t length = stateCount(n);
  if (words.size() != length) {
    throw GrayCodeError("Gray code for n=" + std::to_string(n) + " must have " +
                            std::to_string(length) + " words, got " +
                            std::to_string(words.size()),
                        std::min(words.size(), length));
  }
  std::vector<bool> seen(length, false);
  for (std::size_t k = 0; k < length; ++k) {
    const Word w = words[k];
    if (w >= length) {
      throw GrayCodeError("word " + std::to_string(k) + " = " + std::to_string(w) +
                              " does not fit in " + std::to_string(n) + " bits",
                          k);
    }
    if (seen[w]) {
      throw GrayCodeError("word " + std::to_string(k) + " repeats " + toBinary(w, n), k);
    }
    seen[w] = true;
  }
  for (std::size_t k = 0; k < length; ++k) {
    const Word next = words[(k + 1) % length];
    if (popcount(words[k] ^ next) != 1) {
      throw GrayCodeError("words " + std::to_string(k) + " and " +
                              std::to_string((k + 1) % length) + " (" + toBinary(words[k], n) +
                              ", " + toBinary(next, n) + ") are not adjacent",
                          k);
    }
  }
}

}  // namespace

TransitionSequence::TransitionSequence(int n, std::vector<int> items)
    : n_(n), items_(std::move(items)) {
  validateTransitions(n_, items_);
}

GrayCode::GrayCode(int n, std::vector<Word> words) : n_(n), words_(std::move(words)) {
  validateWords(n_, words_);
}

std::uint64_t TransitionCount::total() const {
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

std::string_view toString(Balance b) {
  switch (b) {
    case Balance::TotallyBalanced:
      return "totally-balanced";
    case Balance::Balanced:
      return "balanced";
    case Balance::Unbalanced:
      return "unbalanced";
  }
  return "?";
}

GrayCode reflectedGray(int n) {
  requireBits(n, 1, kMaxGrayBits, "reflectedGray");
  std::vector<Word> words(stateCount(n));
  for (std::size_t k = 0; k < words.size(); ++k) {
    words[k] = static_cast<Word>(k ^ (k >> 1));
  }
  return GrayCode(n, std::move(words));
}

TransitionSequence toTransitions(const GrayCode& code) {
  const auto words = code.words();
  std::vector<int> items(words.size());
  for (std::size_t k = 0; k < words.size(); ++k) {
    const Word diff = words[k] ^ words[(k + 1) % words.size()];
    items[k] = __builtin_ctz(diff) + 1;
  }
  return TransitionSequence(code.bits(), std::move(items));
}

GrayCode fromTransitions(const TransitionSequence& seq, Word start) {
  const int n = seq.bits();
  if (start > allOnes(n)) {
    throw std::invalid_argument("start word " + std::to_string(start) + " does not fit in " +
                                std::to_string(n) + " bits");
  }
  std::vector<Word> words(seq.size());
  Word x = start;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    words[k] = x;
    x ^= transitionMask(seq[k]);
  }
  return GrayCode(n, std::move(words));
}

TransitionCount transitionCount(const TransitionSequence& seq) {
  TransitionCount tc{seq.bits(), std::vector<std::uint64_t>(static_cast<std::size_t>(seq.bits()))};
  for (int i : seq.items()) ++tc.counts[static_cast<std::size_t>(i - 1)];
  return tc;
}

Balance classifyBalance(const TransitionCount& tc) {
  const auto [lo, hi] = std::minmax_element(tc.counts.begin(), tc.counts.end());
  if (*lo == *hi) return Balance::TotallyBalanced;
  if (*hi - *lo <= 2) return Balance::Balanced;
  return Balance::Unbalanced;
}

int chooseL(int n) {
  requireBits(n, 4, 30, "chooseL");
  const auto quotient = static_cast<int>(stateCount(n) / static_cast<std::size_t>(n));
  return quotient - (quotient % 2);
}

std::string formatSequence(const TransitionSequence& seq) {
  return detail::joinDecimal(seq.items());
}

TransitionSequence parseSequence(std::string_view text) {
  const auto values = detail::parseDecimalList(text);
  const int n = detail::exactLog2(values.size());
  if (n < 1) {
    throw std::invalid_argument("transition sequence length " + std::to_string(values.size()) +
                                " is not a power of two");
  }
  std::vector<int> items;
  items.reserve(values.size());
  for (auto v : values) items.push_back(static_cast<int>(std::min<std::uint64_t>(v, 1u << 30)));
  return TransitionSequence(n, std::move(items));
}

std::string formatWords(const GrayCode& code) { return detail::joinDecimal(code.words()); }

GrayCode parseWords(std::string_view text) {
  const auto values = detail::parseDecimalList(text);
  const int n = detail::exactLog2(values.size());
  if (n < 1) {
    throw std::invalid_argument("codeword list length " + std::to_string(values.size()) +
                                " is not a power of two");
  }
  std::vector<Word> words;
  words.reserve(values.size());
  for (auto v : values) {
    if (v >= values.size()) {
      throw GrayCodeError("word " + std::to_string(words.size()) + " = " + std::to_string(v) +
                              " does not fit in " + std::to_string(n) + " bits",
                          words.size());
    }
    words.push_back(static_cast<Word>(v));
  }
  return GrayCode(n, std::move(words));
}

}  // namespace cubewalk
