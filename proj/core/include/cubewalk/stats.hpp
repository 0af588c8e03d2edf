#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubewalk/prng.hpp"

namespace cubewalk {

/// Read-only view of `count` bits packed MSB-first into bytes.
class BitView {
 public:
  BitView(std::span<const std::uint8_t> bytes, std::size_t count);
  explicit BitView(std::span<const std::uint8_t> bytes) : BitView(bytes, bytes.size() * 8) {}

  std::size_t size() const noexcept { return count_; }
  bool operator[](std::size_t k) const {
    const std::size_t j = offset_ + k;
    return (bytes_[j >> 3] >> (7 - (j & 7))) & 1U;
  }
  BitView slice(std::size_t offset, std::size_t count) const;

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t offset_ = 0;
  std::size_t count_;
};

class InsufficientData : public std::invalid_argument {
 public:
  InsufficientData(const std::string& test, std::size_t have, std::size_t required)
      : std::invalid_argument(test + ": " + std::to_string(have) + " bits given, at least " +
                              std::to_string(required) + " required"),
        required_(required) {}
  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t required_;
};

struct TestReport {
  std::string testName;
  std::size_t sampleBits = 0;
  double statistic = 0;
  double pValue = 0;
  double alpha = 0.01;
  bool pass = false;
};

inline constexpr std::size_t kMinTestBits = 10'000;

TestReport monobit(BitView bits, double alpha = 0.01);
TestReport blockFrequency(BitView bits, std::size_t blockLength = 128, double alpha = 0.01);
TestReport runsTest(BitView bits, double alpha = 0.01);
/// Chi-square over the 2^k cells of consecutive non-overlapping k-bit words.
TestReport chiSquareBlocks(BitView bits, int k = 8, double alpha = 0.01);

/// The four tests above with their default parameters.
std::vector<TestReport> miniBattery(BitView bits, double alpha = 0.01);

// Reference tails: P(|Z| >= z) for standard normal Z, and P(X >= x) for
// X ~ chi-square(df).
double normalTwoSided(double z);
double chiSquareUpper(double df, double x);

/// Raised when the sink fails; carries the bytes already written.
class ExportError : public std::runtime_error {
 public:
  ExportError(const std::string& what, std::size_t written)
      : std::runtime_error(what), written_(written) {}
  std::size_t written() const noexcept { return written_; }

 private:
  std::size_t written_;
};

/// Writes exactly nBytes of the generator's byte stream and flushes.
std::size_t exportRaw(const GeneratorConfig& config, std::size_t nBytes, std::ostream& sink);

struct BatteryContext {
  int n = 0;
  std::size_t b = 0;
  std::uint64_t seedState = 0;
  std::uint64_t seedStrategy = 0;
  std::string source;
};

std::string formatBattery(const std::vector<TestReport>& reports);
std::string batteryJson(const std::vector<TestReport>& reports, const BatteryContext& context);

}  // namespace cubewalk
