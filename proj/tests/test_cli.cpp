#include <cstdio>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "cubewalk/prng.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace cubewalk;
using namespace cubewalk::testing;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result runCli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("cubewalk_cli_" + name)).string();
}

}  // namespace

TEST_CASE("func check on profile a") {
  const auto r = runCli({"func", "check", "--table", "[13,10,9,14,3,11,1,12,15,4,7,5,2,6,0,8]"});
  CHECK(r.code == 0);
  CHECK(r.out.find("doubly stochastic: yes; strongly connected: yes") == 0);
  CHECK(r.out.find("1 cycle(s) of length 16") != std::string::npos);
  CHECK(r.out.find("totally-balanced; TC = 4,4,4,4") != std::string::npos);

  const auto j = nlohmann::json::parse(
      runCli({"func", "check", "--json", "--table", "[13,10,9,14,3,11,1,12,15,4,7,5,2,6,0,8]"}).out);
  CHECK(j["doubly_stochastic"] == true);
  CHECK(j["strongly_connected"] == true);
}

TEST_CASE("func check failures exit non-zero") {
  const auto id = runCli({"func", "check", "--table", "[0,1,2,3]"});
  CHECK(id.code == cli::kValidationFailed);
  CHECK(id.out.find("strongly connected: no") != std::string::npos);
  const auto bad = runCli({"func", "check", "--table", "[0,1,2]"});
  CHECK(bad.code == cli::kUsage);
  CHECK(bad.err.find("error:") == 0);
  // f*: strongly connected, removed arcs are two 4-cycles.
  std::string table = "[";
  for (Word x = 0; x < 8; ++x) table += (x ? "," : "") + std::to_string(fStar()(x));
  table += "]";
  const auto star = runCli({"func", "check", "--table", table});
  CHECK(star.code == 0);
  CHECK(star.out.find("2 cycle(s) of length 4 4") != std::string::npos);
}

TEST_CASE("gray subcommands") {
  const auto count = runCli({"gray", "count", "--n", "6"});
  CHECK(count.code == 0);
  CHECK(count.out.find("#'_n: 3003") != std::string::npos);
  CHECK(count.out.find("#_n (l' >= 2): 8191") != std::string::npos);
  CHECK(count.out.find("#_n: 8192") != std::string::npos);

  const auto gen = runCli({"gray", "gen", "--n", "4"});
  CHECK(gen.out == "2,3,4,1,4,3,2,3,1,4,1,3,2,1,2,4\n");
  const auto five = runCli({"gray", "gen", "--n", "5", "--jobs", "2"});
  CHECK(std::count(five.out.begin(), five.out.end(), '\n') == 2);
  CHECK(runCli({"gray", "gen", "--n", "6", "--limit", "100"}).out ==
        runCli({"gray", "gen", "--n", "6", "--limit", "100", "--jobs", "3"}).out);
  CHECK(runCli({"gray", "gen", "--n", "9"}).code == cli::kUsage);
}

TEST_CASE("func build") {
  const auto r = runCli({"func", "build", "--inline", "2,3,4,1,4,3,2,3,1,4,1,3,2,1,2,4"});
  CHECK(r.out == "[13,10,9,14,3,11,1,12,15,4,7,5,2,6,0,8]\n");
  const auto words = runCli({"func", "build", "--words", "--inline", "0,2,6,14,15,7,3,1,5,4,12,13,9,11,10,8"});
  CHECK(words.out == r.out);
  const auto path = tempPath("code.txt");
  { std::ofstream(path) << "2,3,4,1,4,3,2,3,1,4,1,3,2,1,2,4\n"; }
  CHECK(runCli({"func", "build", "--code", path}).out == r.out);
  std::remove(path.c_str());
  CHECK(runCli({"func", "build", "--inline", "1,2,1"}).code == cli::kUsage);
  CHECK(runCli({"func", "build"}).code == cli::kUsage);
}

TEST_CASE("mix") {
  const auto r = runCli({"mix", "--profile", "a", "--epsilon", "1e-4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("profile-b=32") != std::string::npos);
  CHECK(r.out.find("t=20") != std::string::npos);
  const auto sweep = nlohmann::json::parse(runCli({"mix", "--profile", "b", "--sweep", "--json"}).out);
  CHECK(sweep["profile_b"] == 41);
  CHECK(sweep["reports"].size() == 8);
  const auto stuck = runCli({"mix", "--table", "[0,1,2,3]", "--cap", "50"});
  CHECK(stuck.code == cli::kValidationFailed);
  CHECK(stuck.out.find("did-not-mix(cap=50)") != std::string::npos);
  CHECK(runCli({"mix", "--profile", "a", "--table", "[0,1,2,3]"}).code == cli::kUsage);
}

TEST_CASE("rand") {
  const auto empty = runCli({"rand", "--profile", "a", "--bytes", "0"});
  CHECK(empty.code == 0);
  CHECK(empty.out.empty());

  CHECK(runCli({"rand", "--profile", "a", "--bytes", "10", "--stdout"}).code == cli::kUsage);
  CHECK(runCli({"rand", "--profile", "a", "--bytes", "10", "--seed-x", "0", "--seed-s", "1"}).code ==
        cli::kUsage);
  CHECK(runCli({"rand", "--profile", "a", "--bytes", "10", "--seed-x", "10", "--seed-s", "1", "--stdout"})
            .code == cli::kUsage);
  CHECK(runCli({"rand", "--profile", "a", "--bytes", "10", "--seed-x", "zz", "--seed-s", "1", "--stdout"})
            .code == cli::kUsage);
  CHECK(runCli({"rand", "--table", "[1,0]", "--bytes", "10", "--seed-x", "0", "--seed-s", "1", "--stdout"})
            .code == cli::kUsage);

  const std::vector<std::string> args = {"rand", "--profile", "c", "--b", "49", "--seed-x", "0",
                                         "--seed-s", "1", "--bytes", "4096", "--stdout"};
  const auto a = runCli(args);
  CHECK(a.code == 0);
  CHECK(a.out.size() == 4096);
  CHECK(runCli(args).out == a.out);
  const auto expected = Generator(profileConfig('c', 0, 1)).bytes(4096);
  CHECK(a.out == std::string(expected.begin(), expected.end()));

  const auto path = tempPath("rand.bin");
  auto toFile = args;
  toFile.back() = "--out";
  toFile.push_back(path);
  CHECK(runCli(toFile).code == 0);
  CHECK(readFile(path) == a.out);
  std::remove(path.c_str());

  const auto hex = runCli({"rand", "--profile", "c", "--b", "49", "--seed-x", "0x0", "--seed-s", "0X1",
                           "--bytes", "4096", "--stdout"});
  CHECK(hex.out == a.out);
}

TEST_CASE("stats") {
  const auto r = runCli({"stats", "--profile", "e", "--bits", "200000", "--seed-s", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("monobit") != std::string::npos);
  const auto j = nlohmann::json::parse(runCli({"stats", "--profile", "e", "--bits", "200000", "--json"}).out);
  CHECK(j["n"] == 8);
  CHECK(j["b"] == 75);

  const auto path = tempPath("zeros.bin");
  { std::ofstream(path, std::ios::binary) << std::string(4000, '\0'); }
  const auto zeros = runCli({"stats", "--in", path});
  CHECK(zeros.code == cli::kValidationFailed);
  CHECK(zeros.out.find("FAIL") != std::string::npos);
  std::remove(path.c_str());
  CHECK(runCli({"stats", "--profile", "a", "--bits", "100"}).code == cli::kUsage);
}

TEST_CASE("oracle") {
  const auto r = runCli({"oracle", "verify", "--n", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "n=3 cycles=6 orientations=12 doubly-stochastic=12 strongly-connected=12 failures=0\n");
  const auto path = tempPath("cycles.txt");
  CHECK(runCli({"oracle", "verify", "--n", "2", "--dump", path}).code == 0);
  CHECK(readFile(path) == "0,1,3,2\n");
  std::remove(path.c_str());
  CHECK(runCli({"oracle", "verify", "--n", "5"}).code == cli::kUsage);
  const auto f = nlohmann::json::parse(runCli({"oracle", "functions", "--n", "5", "--json"}).out);
  CHECK(f["functions"] == 2);
}

TEST_CASE("help and usage") {
  const auto help = runCli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("rand") != std::string::npos);
  CHECK(runCli({}).code == cli::kUsage);
  CHECK(runCli({"bogus"}).code == cli::kUsage);
}
