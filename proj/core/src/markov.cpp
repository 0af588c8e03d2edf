#include "cubewalk/markov.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace cubewalk {

using boost::multiprecision::cpp_int;

MarkovMatrix::MarkovMatrix(int n, std::vector<std::vector<Entry>> rows) : n_(n) {
  requireBits(n_, 1, 16, "Markov matrix");
  const std::size_t dim = stateCount(n_);
  if (rows.size() != dim) {
    throw std::invalid_argument("Markov matrix for n=" + std::to_string(n_) + " needs " +
                                std::to_string(dim) + " rows");
  }
  offsets_.reserve(dim + 1);
  offsets_.push_back(0);
  for (std::size_t x = 0; x < dim; ++x) {
    auto& r = rows[x];
    std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.column < b.column; });
    std::uint64_t sum = 0;
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r[k].column >= dim || (k > 0 && r[k].column == r[k - 1].column)) {
        throw std::invalid_argument("row " + std::to_string(x) + " has a bad column index");
      }
      sum += r[k].numerator;
      if (r[k].numerator != 0) entries_.push_back(r[k]);
    }
    if (sum != static_cast<std::uint64_t>(n_)) {
      throw std::invalid_argument("row " + std::to_string(x) + " sums to " + std::to_string(sum) +
                                  "/" + std::to_string(n_) + ", not 1");
    }
    offsets_.push_back(entries_.size());
  }
}

std::uint32_t MarkovMatrix::numerator(Word x, Word y) const {
  const auto r = row(x);
  const auto it = std::lower_bound(r.begin(), r.end(), y,
                                   [](const Entry& e, Word col) { return e.column < col; });
  return (it != r.end() && it->column == y) ? it->numerator : 0;
}

MarkovMatrix markovOf(const IterationGraph& g) {
  const int n = g.bits();
  std::vector<std::vector<MarkovMatrix::Entry>> rows(g.vertexCount());
  for (Word x = 0; x < g.vertexCount(); ++x) {
    auto& r = rows[x];
    std::uint32_t offDiagonal = 0;
    for (Word y : g.successors(x)) {
      if (y == x) continue;
      ++offDiagonal;
      auto it = std::find_if(r.begin(), r.end(), [y](const auto& e) { return e.column == y; });
      if (it == r.end()) {
        r.push_back({y, 1});
      } else {
        ++it->numerator;
      }
    }
    r.push_back({x, static_cast<std::uint32_t>(n) - offDiagonal});
  }
  return MarkovMatrix(n, std::move(rows));
}

bool isDoublyStochastic(const MarkovMatrix& m) {
  std::vector<std::uint64_t> columns(m.dimension(), 0);
  for (Word x = 0; x < m.dimension(); ++x) {
    for (const auto& e : m.row(x)) columns[e.column] += e.numerator;
  }
  return std::all_of(columns.begin(), columns.end(),
                     [&](std::uint64_t c) { return c == static_cast<std::uint64_t>(m.denominator()); });
}

namespace {

int rowBits(std::size_t length) {
  if (length < 2 || (length & (length - 1)) != 0) {
    throw std::invalid_argument("distribution length " + std::to_string(length) +
                                " is not a power of two >= 2");
  }
  return __builtin_ctzll(length);
}

}  // namespace

double totalVariationToUniform(std::span<const double> row) {
  const int n = rowBits(row.size());
  const double uniform = std::ldexp(1.0, -n);
  double sum = 0;
  double distance = 0;
  for (double p : row) {
    if (!(p >= 0.0)) throw std::invalid_argument("distribution has a negative or NaN entry");
    sum += p;
    distance += std::abs(p - uniform);
  }
  if (std::abs(sum - 1.0) > std::ldexp(1.0, -40)) {
    throw std::invalid_argument("distribution sums to " + std::to_string(sum) + ", not 1");
  }
  return distance / 2;
}

Rational totalVariationToUniform(std::span<const Rational> row) {
  const int n = rowBits(row.size());
  const Rational uniform(1, cpp_int(1) << n);
  Rational sum = 0;
  Rational distance = 0;
  for (const auto& p : row) {
    if (p < 0) throw std::invalid_argument("distribution has a negative entry");
    sum += p;
    distance += abs(p - uniform);
  }
  if (sum != 1) throw std::invalid_argument("distribution does not sum to 1");
  return distance / 2;
}

Rational exactWorstRowDistance(const MarkovMatrix& m, std::size_t t) {
  const std::size_t dim = m.dimension();
  const cpp_int denominator = boost::multiprecision::pow(cpp_int(m.denominator()),
                                                         static_cast<unsigned>(t));
  cpp_int worst = 0;
  std::vector<cpp_int> current(dim);
  std::vector<cpp_int> next(dim);
  for (Word x = 0; x < dim; ++x) {
    std::fill(current.begin(), current.end(), cpp_int(0));
    current[x] = 1;
    for (std::size_t step = 0; step < t; ++step) {
      std::fill(next.begin(), next.end(), cpp_int(0));
      for (Word y = 0; y < dim; ++y) {
        if (current[y] == 0) continue;
        for (const auto& e : m.row(y)) next[e.column] += current[y] * e.numerator;
      }
      current.swap(next);
    }
    // sum_y |c_y / d - 1/dim| = sum_y |c_y * dim - d| / (d * dim)
    cpp_int deviation = 0;
    for (const auto& c : current) deviation += abs(c * dim - denominator);
    worst = std::max(worst, deviation);
  }
  return Rational(worst, denominator * dim * 2);
}

namespace {

// Worst-row TV of M^t for t = 1, 2, ... until `stop(t, tv)` or the cap.
template <typename Stop>
std::vector<double> powerTrace(const MarkovMatrix& m, std::size_t cap, Stop&& stop) {
  const std::size_t dim = m.dimension();
  const double scale = 1.0 / m.denominator();
  const double uniform = 1.0 / static_cast<double>(dim);
  std::vector<double> power(dim * dim, 0.0);
  for (std::size_t x = 0; x < dim; ++x) power[x * dim + x] = 1.0;
  std::vector<double> next(dim * dim);
  std::vector<double> trace;
  for (std::size_t t = 1; t <= cap; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    double worst = 0;
    for (std::size_t x = 0; x < dim; ++x) {
      const double* in = &power[x * dim];
      double* out = &next[x * dim];
      for (std::size_t y = 0; y < dim; ++y) {
        if (in[y] == 0.0) continue;
        const double p = in[y] * scale;
        for (const auto& e : m.row(static_cast<Word>(y))) out[e.column] += p * e.numerator;
      }
      double distance = 0;
      for (std::size_t z = 0; z < dim; ++z) distance += std::abs(out[z] - uniform);
      worst = std::max(worst, distance / 2);
    }
    power.swap(next);
    trace.push_back(worst);
    if (stop(worst)) break;
  }
  return trace;
}

void attachExact(MixingReport& report, const MarkovMatrix& m, const MixingOptions& options) {
  if (report.t && m.bits() <= options.exactMaxBits) {
    report.exactDistance = exactWorstRowDistance(m, *report.t).convert_to<double>();
  }
}

}  // namespace

MixingReport mixingTime(const MarkovMatrix& m, double epsilon, const MixingOptions& options) {
  const double eps[] = {epsilon};
  return std::move(mixingSweep(m, eps, options).front());
}

std::vector<MixingReport> mixingSweep(const MarkovMatrix& m, std::span<const double> epsilons,
                                      const MixingOptions& options) {
  if (epsilons.empty()) throw std::invalid_argument("no epsilon given");
  for (double e : epsilons) {
    if (!(e > 0.0 && e < 1.0)) {
      throw std::invalid_argument("epsilon must lie in (0, 1), got " + std::to_string(e));
    }
  }
  const double smallest = *std::min_element(epsilons.begin(), epsilons.end());
  const auto trace = powerTrace(m, options.cap, [&](double tv) { return tv <= smallest; });

  std::vector<MixingReport> reports;
  for (double e : epsilons) {
    MixingReport r;
    r.n = m.bits();
    r.epsilon = e;
    const auto hit = std::find_if(trace.begin(), trace.end(), [e](double tv) { return tv <= e; });
    if (hit != trace.end()) {
      r.t = static_cast<std::size_t>(hit - trace.begin()) + 1;
      r.trace.assign(trace.begin(), hit + 1);
    } else {
      r.trace = trace;
    }
    attachExact(r, m, options);
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<double> defaultEpsilonSweep() {
  return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
}

std::string formatReport(const MixingReport& report, bool withTrace) {
  std::ostringstream out;
  out << std::setprecision(6);
  out << "n=" << report.n << " epsilon=" << report.epsilon << " t=";
  if (report.t) {
    out << *report.t;
  } else {
    out << "did-not-mix(cap=" << report.trace.size() << ")";
  }
  if (report.exactDistance) {
    out << " exact-tv=" << std::setprecision(12) << *report.exactDistance << std::setprecision(6);
  }
  out << '\n';
  if (withTrace) {
    out << std::setprecision(12);
    for (std::size_t k = 0; k < report.trace.size(); ++k) {
      out << "t=" << k + 1 << " tv=" << report.trace[k] << '\n';
    }
  }
  return out.str();
}

std::string toJson(const MixingReport& report) {
  nlohmann::json doc;
  doc["n"] = report.n;
  doc["epsilon"] = report.epsilon;
  doc["mixed"] = report.mixed();
  doc["t"] = report.t ? nlohmann::json(*report.t) : nlohmann::json(nullptr);
  doc["exact_tv"] = report.exactDistance ? nlohmann::json(*report.exactDistance) : nlohmann::json(nullptr);
  doc["trace"] = report.trace;
  return doc.dump();
}

}  // namespace cubewalk
