#include "cubewalk/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "json.hpp"

namespace cubewalk {

BitView::BitView(std::span<const std::uint8_t> bytes, std::size_t count)
    : bytes_(bytes), count_(count) {
  if (count > bytes.size() * 8) throw std::invalid_argument("bit count exceeds the buffer");
}

BitView BitView::slice(std::size_t offset, std::size_t count) const {
  if (offset + count > count_) throw std::out_of_range("bit slice outside the view");
  BitView view = *this;
  view.offset_ = offset_ + offset;
  view.count_ = count;
  return view;
}

double normalTwoSided(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

double chiSquareUpper(double df, double x) {
  if (x <= 0) return 1.0;
  return boost::math::gamma_q(df / 2, x / 2);
}

namespace {

void requireLength(const char* test, const BitView& bits, std::size_t required) {
  if (bits.size() < required) throw InsufficientData(test, bits.size(), required);
}

TestReport finish(std::string name, const BitView& bits, double statistic, double p,
                  double alpha) {
  p = std::clamp(p, 0.0, 1.0);
  return TestReport{std::move(name), bits.size(), statistic, p, alpha, p >= alpha};
}

}  // namespace

TestReport monobit(BitView bits, double alpha) {
  requireLength("monobit", bits, kMinTestBits);
  long long sum = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) sum += bits[k] ? 1 : -1;
  const double s = std::abs(static_cast<double>(sum)) / std::sqrt(static_cast<double>(bits.size()));
  return finish("monobit", bits, s, normalTwoSided(s), alpha);
}

TestReport blockFrequency(BitView bits, std::size_t blockLength, double alpha) {
  requireLength("block-frequency", bits, kMinTestBits);
  if (blockLength < 8 || blockLength > bits.size() / 2) {
    throw std::invalid_argument("block-frequency: block length " + std::to_string(blockLength) +
                                " outside [8, " + std::to_string(bits.size() / 2) + "]");
  }
  const std::size_t blocks = bits.size() / blockLength;
  double sum = 0;
  for (std::size_t j = 0; j < blocks; ++j) {
    std::size_t ones = 0;
    for (std::size_t k = 0; k < blockLength; ++k) ones += bits[j * blockLength + k];
    const double pi = static_cast<double>(ones) / static_cast<double>(blockLength);
    sum += (pi - 0.5) * (pi - 0.5);
  }
  const double chi2 = 4.0 * static_cast<double>(blockLength) * sum;
  return finish("block-frequency", bits, chi2, chiSquareUpper(static_cast<double>(blocks), chi2),
                alpha);
}

TestReport runsTest(BitView bits, double alpha) {
  requireLength("runs", bits, kMinTestBits);
  const double n = static_cast<double>(bits.size());
  std::size_t ones = 0;
  std::size_t runs = 1;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    ones += bits[k];
    if (k + 1 < bits.size() && bits[k] != bits[k + 1]) ++runs;
  }
  const double pi = static_cast<double>(ones) / n;
  const double v = static_cast<double>(runs);
  // Frequency prerequisite: the runs statistic is meaningless on a biased stream.
  if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(n)) return finish("runs", bits, v, 0.0, alpha);
  const double spread = 2.0 * std::sqrt(2.0 * n) * pi * (1 - pi);
  const double p = std::erfc(std::abs(v - 2.0 * n * pi * (1 - pi)) / spread);
  return finish("runs", bits, v, p, alpha);
}

TestReport chiSquareBlocks(BitView bits, int k, double alpha) {
  if (k < 1 || k > 16) throw std::invalid_argument("chi-square: word width must lie in [1, 16]");
  const std::size_t cells = std::size_t{1} << k;
  const std::size_t width = static_cast<std::size_t>(k);
  // At least five expected hits per cell.
  requireLength("chi-square", bits, std::max(kMinTestBits, 5 * cells * width));
  const std::size_t words = bits.size() / width;
  std::vector<std::size_t> observed(cells, 0);
  for (std::size_t w = 0; w < words; ++w) {
    std::size_t value = 0;
    for (std::size_t j = 0; j < width; ++j) value = (value << 1) | bits[w * width + j];
    ++observed[value];
  }
  const double expected = static_cast<double>(words) / static_cast<double>(cells);
  double chi2 = 0;
  for (auto o : observed) {
    const double d = static_cast<double>(o) - expected;
    chi2 += d * d / expected;
  }
  return finish("chi-square-" + std::to_string(k), bits, chi2,
                chiSquareUpper(static_cast<double>(cells - 1), chi2), alpha);
}

std::vector<TestReport> miniBattery(BitView bits, double alpha) {
  return {monobit(bits, alpha), blockFrequency(bits, 128, alpha), runsTest(bits, alpha),
          chiSquareBlocks(bits, 8, alpha)};
}

std::size_t exportRaw(const GeneratorConfig& config, std::size_t nBytes, std::ostream& sink) {
  Generator gen(config);
  std::array<std::uint8_t, 1 << 16> buffer{};
  std::size_t written = 0;
  while (written < nBytes) {
    const std::size_t chunk = std::min(buffer.size(), nBytes - written);
    gen.fill(std::span<std::uint8_t>(buffer.data(), chunk));
    sink.write(reinterpret_cast<const char*>(buffer.data()), static_cast<std::streamsize>(chunk));
    if (!sink) throw ExportError("write to sink failed", written);
    written += chunk;
  }
  sink.flush();
  if (!sink) throw ExportError("flush of sink failed", written);
  return written;
}

std::string formatBattery(const std::vector<TestReport>& reports) {
  std::ostringstream out;
  for (const auto& r : reports) {
    out << std::left << std::setw(16) << r.testName << " bits=" << r.sampleBits
        << " statistic=" << std::setprecision(8) << r.statistic << " p=" << r.pValue
        << (r.pass ? " PASS" : " FAIL") << '\n';
  }
  return out.str();
}

std::string batteryJson(const std::vector<TestReport>& reports, const BatteryContext& context) {
  nlohmann::json doc;
  doc["source"] = context.source;
  doc["n"] = context.n;
  doc["b"] = context.b;
  doc["seed_x"] = context.seedState;
  doc["seed_s"] = context.seedStrategy;
  auto& tests = doc["tests"] = nlohmann::json::array();
  for (const auto& r : reports) {
    tests.push_back({{"test", r.testName},
                     {"bits", r.sampleBits},
                     {"statistic", r.statistic},
                     {"p_value", r.pValue},
                     {"alpha", r.alpha},
                     {"verdict", r.pass ? "pass" : "fail"}});
  }
  return doc.dump();
}

}  // namespace cubewalk
