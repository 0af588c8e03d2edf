#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cubewalk/cubefunc.hpp"

namespace cubewalk {

using Rational = boost::multiprecision::cpp_rational;

/// Row-stochastic matrix of a walk on Gamma(f). Every entry is k/n for an
/// integer k in [0, n]; only the numerators are stored, row by row.
class MarkovMatrix {
 public:
  struct Entry {
    Word column;
    std::uint32_t numerator;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  /// `rows[x]` lists the non-zero entries of row x; each row's numerators must
  /// sum to n.
  MarkovMatrix(int n, std::vector<std::vector<Entry>> rows);

  int bits() const noexcept { return n_; }
  int denominator() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return offsets_.size() - 1; }

  std::span<const Entry> row(Word x) const {
    return std::span<const Entry>(entries_).subspan(offsets_[x], offsets_[x + 1] - offsets_[x]);
  }
  std::uint32_t numerator(Word x, Word y) const;
  Rational at(Word x, Word y) const { return Rational(numerator(x, y), n_); }
  double value(Word x, Word y) const { return static_cast<double>(numerator(x, y)) / n_; }

  friend bool operator==(const MarkovMatrix&, const MarkovMatrix&) = default;

 private:
  int n_;
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
};

/// M[x][y] = (arc slots x -> y) / n for y != x, diagonal takes the remainder.
MarkovMatrix markovOf(const IterationGraph& g);

/// Exact: every column sums to 1.
bool isDoublyStochastic(const MarkovMatrix& m);

/// (1/2) * sum_y |row(y) - 2^-n| for a row of length 2^n.
double totalVariationToUniform(std::span<const double> row);
Rational totalVariationToUniform(std::span<const Rational> row);

struct MixingOptions {
  std::size_t cap = 1'000'000;
  /// Exact rational recomputation at the reported t when n <= this.
  int exactMaxBits = 6;
};

struct MixingReport {
  int n = 0;
  double epsilon = 0;
  std::optional<std::size_t> t;  // empty: did not mix within the cap
  std::vector<double> trace;     // trace[k] = worst-row TV of M^(k+1)
  std::optional<double> exactDistance;

  bool mixed() const { return t.has_value(); }
};

/// Smallest t >= 1 with max_x TV(row x of M^t, uniform) <= epsilon.
MixingReport mixingTime(const MarkovMatrix& m, double epsilon, const MixingOptions& options = {});

/// One report per epsilon, sharing a single powering run.
std::vector<MixingReport> mixingSweep(const MarkovMatrix& m, std::span<const double> epsilons,
                                      const MixingOptions& options = {});

/// 10^-1 .. 10^-8
std::vector<double> defaultEpsilonSweep();

/// Exact worst-row TV distance of M^t (all rows, rational arithmetic).
Rational exactWorstRowDistance(const MarkovMatrix& m, std::size_t t);

/// "epsilon=... t=..." line followed by "t=k tv=..." lines.
std::string formatReport(const MixingReport& report, bool withTrace = true);
std::string toJson(const MixingReport& report);

}  // namespace cubewalk
