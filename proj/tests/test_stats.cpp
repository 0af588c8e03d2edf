#include <cmath>
#include <sstream>
#include <streambuf>

#include "cubewalk/stats.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace cubewalk;
using namespace cubewalk::testing;

namespace {

template <typename F>
double simpson(F&& f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int k = 1; k < intervals; ++k) sum += f(a + k * h) * (k % 2 ? 4 : 2);
  return sum * h / 3;
}

double normalTailByQuadrature(double z) {
  const double pi = std::acos(-1.0);
  const auto phi = [pi](double t) { return std::exp(-t * t / 2) / std::sqrt(2 * pi); };
  return 1 - 2 * simpson(phi, 0, z, 20000);
}

double chiSquareTailByQuadrature(double df, double x) {
  const double logNorm = -(df / 2) * std::log(2.0) - std::lgamma(df / 2);
  const auto pdf = [&](double t) {
    if (t <= 0) return df == 2 ? 0.5 : 0.0;
    return std::exp(logNorm + (df / 2 - 1) * std::log(t) - t / 2);
  };
  return 1 - simpson(pdf, 0, x, 200000);
}

std::vector<std::uint8_t> mixerBytes(std::uint64_t seed, std::size_t count) {
  StrategyGenerator g(seed);
  std::vector<std::uint8_t> out(count);
  for (std::size_t k = 0; k < count; k += 8) {
    const std::uint64_t v = g.next();
    for (std::size_t j = 0; j < 8 && k + j < count; ++j) out[k + j] = static_cast<std::uint8_t>(v >> (8 * j));
  }
  return out;
}

// Accepts `limit` bytes, then fails every write.
class LimitedBuf : public std::streambuf {
 public:
  explicit LimitedBuf(std::size_t limit) : limit_(limit) {}
  std::size_t accepted = 0;

 protected:
  std::streamsize xsputn(const char*, std::streamsize count) override {
    const auto room = static_cast<std::streamsize>(limit_ - accepted);
    const auto taken = std::min(room, count);
    accepted += static_cast<std::size_t>(taken);
    return taken;
  }
  int_type overflow(int_type ch) override {
    if (accepted >= limit_) return traits_type::eof();
    ++accepted;
    return ch;
  }

 private:
  std::size_t limit_;
};

}  // namespace

TEST_CASE("bit view") {
  const std::vector<std::uint8_t> bytes = {0b10110000, 0b00000001};
  const BitView all(bytes);
  CHECK(all.size() == 16);
  CHECK(all[0]);
  CHECK_FALSE(all[1]);
  CHECK(all[2]);
  CHECK(all[15]);
  const auto tail = all.slice(2, 3);
  CHECK(tail.size() == 3);
  CHECK(tail[0]);
  CHECK(tail[1]);
  CHECK_FALSE(tail[2]);
  CHECK_THROWS_AS(all.slice(10, 7), std::out_of_range);
  CHECK_THROWS_AS(BitView(bytes, 17), std::invalid_argument);
}

TEST_CASE("reference tails match quadrature") {
  for (double z : {0.0, 0.3, 1.0, 1.96, 2.5758, 4.0}) {
    INFO("z=" << z);
    CHECK(std::abs(normalTwoSided(z) - normalTailByQuadrature(z)) < 1e-6);
  }
  for (auto [df, x] : {std::pair{2.0, 1.0}, {3.0, 7.8}, {7.0, 2.0}, {10.0, 23.2}, {78.0, 90.0},
                       {255.0, 310.0}}) {
    INFO("df=" << df << " x=" << x);
    CHECK(std::abs(chiSquareUpper(df, x) - chiSquareTailByQuadrature(df, x)) < 1e-6);
  }
  CHECK(chiSquareUpper(5, 0) == 1.0);
}

TEST_CASE("degenerate streams fail") {
  const std::vector<std::uint8_t> zeros(2000, 0);
  for (const auto& r : miniBattery(BitView(zeros))) {
    INFO(r.testName);
    CHECK_FALSE(r.pass);
    CHECK(r.pValue < 1e-10);
    CHECK(r.sampleBits == 16000);
  }
  const std::vector<std::uint8_t> alternating(2000, 0b01010101);
  CHECK(monobit(BitView(alternating)).pass);
  CHECK(monobit(BitView(alternating)).pValue == doctest::Approx(1.0));
  CHECK_FALSE(runsTest(BitView(alternating)).pass);
  CHECK_FALSE(chiSquareBlocks(BitView(alternating)).pass);
}

TEST_CASE("short input is rejected") {
  const std::vector<std::uint8_t> few(1000, 0x5A);
  try {
    monobit(BitView(few));
    FAIL("accepted 8000 bits");
  } catch (const InsufficientData& e) {
    CHECK(e.required() == kMinTestBits);
  }
  CHECK_THROWS_AS(runsTest(BitView(few)), InsufficientData);
  CHECK_THROWS_AS(blockFrequency(BitView(few)), InsufficientData);
  const std::vector<std::uint8_t> enough(1250, 0x5A);
  CHECK_NOTHROW(monobit(BitView(enough)));
  // 16-bit words need 5 * 65536 of them.
  CHECK_THROWS_AS(chiSquareBlocks(BitView(enough), 16), InsufficientData);
  CHECK_THROWS_AS(chiSquareBlocks(BitView(enough), 0), std::invalid_argument);
  CHECK_THROWS_AS(blockFrequency(BitView(enough), 4), std::invalid_argument);
}

TEST_CASE("a good source passes at the nominal rate") {
  std::vector<int> passes(4, 0);
  const int samples = 200;
  for (int s = 0; s < samples; ++s) {
    const auto bytes = mixerBytes(1000 + static_cast<std::uint64_t>(s), 4000);
    const auto reports = miniBattery(BitView(bytes));
    REQUIRE(reports.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) passes[k] += reports[k].pass;
  }
  for (int p : passes) {
    CHECK(p >= 190);
    CHECK(p <= samples);
  }
}

TEST_CASE("raw export") {
  auto cheap = profileConfig('a', 0, 9);
  cheap.b = 1;

  std::ostringstream empty;
  CHECK(exportRaw(cheap, 0, empty) == 0);
  CHECK(empty.str().empty());

  std::ostringstream big;
  CHECK(exportRaw(cheap, 12'500'000, big) == 12'500'000);
  CHECK(big.str().size() == 12'500'000);

  std::ostringstream again;
  exportRaw(cheap, 12'500'000, again);
  CHECK(again.str() == big.str());

  Generator direct(cheap);
  const auto head = direct.bytes(1000);
  CHECK(big.str().compare(0, 1000, std::string(head.begin(), head.end())) == 0);

  LimitedBuf limited(100'000);
  std::ostream failing(&limited);
  try {
    exportRaw(cheap, 200'000, failing);
    FAIL("failing sink accepted");
  } catch (const ExportError& e) {
    CHECK(e.written() == 65'536);
  }
}

TEST_CASE("battery output") {
  const auto bytes = mixerBytes(5, 4000);
  const auto reports = miniBattery(BitView(bytes));
  const auto text = formatBattery(reports);
  CHECK(text.find("monobit") != std::string::npos);
  CHECK(text.find("chi-square-8") != std::string::npos);

  const auto doc = nlohmann::json::parse(batteryJson(reports, {4, 32, 0, 5, "profile a"}));
  CHECK(doc["n"] == 4);
  CHECK(doc["b"] == 32);
  CHECK(doc["seed_s"] == 5);
  REQUIRE(doc["tests"].size() == 4);
  for (const auto& t : doc["tests"]) {
    CHECK(t["bits"] == 32000);
    CHECK(t["p_value"].get<double>() >= 0.0);
    CHECK(t["p_value"].get<double>() <= 1.0);
    CHECK((t["verdict"] == "pass" || t["verdict"] == "fail"));
  }
}
