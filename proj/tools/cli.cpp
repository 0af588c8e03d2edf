#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cubewalk/cubefunc.hpp"
#include "cubewalk/graycode.hpp"
#include "cubewalk/markov.hpp"
#include "cubewalk/oracle.hpp"
#include "cubewalk/prng.hpp"
#include "cubewalk/stats.hpp"
#include "json.hpp"

namespace cubewalk::cli {

namespace {

using nlohmann::json;

// Raised for bad flag values that CLI11 cannot check by itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parseHex(const std::string& text, const char* flag) {
  std::string_view digits = text;
  if (digits.starts_with("0x") || digits.starts_with("0X")) digits.remove_prefix(2);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v, 16);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw UsageError(std::string(flag) + ": '" + text + "' is not a 64-bit hexadecimal value");
  }
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string joinCounts(const TransitionCount& tc) {
  std::string out;
  for (std::size_t k = 0; k < tc.counts.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(tc.counts[k]);
  }
  return out;
}

struct Common {
  bool json = false;
  int jobs = 1;
};

void addCommon(CLI::App* app, Common& c, bool withJobs) {
  app->add_flag("--json", c.json, "Structured output");
  if (withJobs) app->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::Range(1, 256));
}

// gray ----------------------------------------------------------------------

struct GrayGen {
  Common common;
  int n = 0;
  std::optional<std::size_t> limit;
  bool totallyBalanced = false;
};

int grayGen(const GrayGen& o, std::ostream& out) {
  GenerateOptions options;
  options.limit = o.limit;
  options.totallyBalancedOnly = o.totallyBalanced;
  options.jobs = o.common.jobs;
  const auto result = generateBalanced(o.n, options);
  if (o.common.json) {
    json doc;
    doc["n"] = o.n;
    doc["l"] = chooseL(o.n);
    doc["examined"] = result.examined;
    doc["duplicates"] = result.duplicates;
    auto& list = doc["candidates"] = json::array();
    for (const auto& c : result.candidates) {
      list.push_back({{"sequence", std::vector<int>(c.sequence.items().begin(), c.sequence.items().end())},
                      {"tc", c.count.counts},
                      {"balance", std::string(toString(c.balance))}});
    }
    out << doc.dump() << '\n';
  } else {
    for (const auto& c : result.candidates) out << formatSequence(c.sequence) << '\n';
  }
  return kOk;
}

int grayCount(int n, const Common& common, std::ostream& out) {
  const auto all = countAllDecompositions(n, DegenerateTerm::Include);
  const auto table = countAllDecompositions(n, DegenerateTerm::Exclude);
  const auto fixed = countFixedLDecompositions(n);
  if (common.json) {
    out << json{{"n", n},
                {"l", chooseL(n)},
                {"all", all.str()},
                {"table", table.str()},
                {"fixed_l", fixed.str()}}
               .dump()
        << '\n';
  } else {
    out << "n=" << n << " l=" << chooseL(n) << '\n'
        << "#_n: " << all << '\n'
        << "#_n (l' >= 2): " << table << '\n'
        << "#'_n: " << fixed << '\n';
  }
  return kOk;
}

// func ----------------------------------------------------------------------

struct FuncBuild {
  Common common;
  std::string codeFile;
  std::string inlineSeq;
  bool words = false;
};

int funcBuild(const FuncBuild& o, std::ostream& out) {
  const std::string text = o.codeFile.empty() ? o.inlineSeq : slurp(o.codeFile);
  const GrayCode code = o.words ? parseWords(text) : fromTransitions(parseSequence(text), 0);
  const auto f = removeCycle(grayToCycle(code));
  if (o.common.json) {
    out << json{{"n", f.bits()}, {"table", std::vector<Word>(f.images().begin(), f.images().end())}}.dump()
        << '\n';
  } else {
    out << formatFunctionTable(f) << '\n';
  }
  return kOk;
}

int funcCheck(const std::string& table, const Common& common, std::ostream& out) {
  const auto f = parseFunctionTable(table);
  const auto graph = buildIterationGraph(f);
  const bool ds = isDoublyStochastic(markovOf(graph));
  const auto conn = isStronglyConnected(graph);

  json doc{{"n", f.bits()}, {"doubly_stochastic", ds}, {"strongly_connected", conn.strong},
           {"components", conn.componentCount}};
  std::ostringstream text;
  text << "doubly stochastic: " << (ds ? "yes" : "no")
       << "; strongly connected: " << (conn.strong ? "yes" : "no") << '\n';
  if (!conn.strong) {
    text << "components: " << conn.componentCount << "; " << conn.witness->second
         << " unreachable from " << conn.witness->first << '\n';
    doc["unreachable"] = {conn.witness->first, conn.witness->second};
  }
  try {
    const auto removed = recoverRemovedPermutation(f);
    std::vector<std::size_t> lengths;
    for (const auto& c : removed.cycles) lengths.push_back(c.size());
    doc["removed_cycle_lengths"] = lengths;
    text << "removed arcs: " << removed.cycles.size() << " cycle(s) of length";
    for (auto len : lengths) text << ' ' << len;
    text << '\n';
    if (const auto cycle = removed.hamiltonianCycle()) {
      const auto tc = transitionCount(toTransitions(cycleToGray(*cycle)));
      const auto balance = classifyBalance(tc);
      text << "gray code: " << toString(balance) << "; TC = " << joinCounts(tc) << '\n';
      doc["balance"] = std::string(toString(balance));
      doc["tc"] = tc.counts;
    } else {
      text << "gray code: none (removed arcs are not a Hamiltonian cycle)\n";
      doc["balance"] = nullptr;
    }
  } catch (const MapShapeError& e) {
    text << "removed arcs: not a permutation (" << e.what() << ")\n";
    doc["removed_cycle_lengths"] = nullptr;
    doc["balance"] = nullptr;
  }
  out << (common.json ? doc.dump() + "\n" : text.str());
  return ds && conn.strong ? kOk : kValidationFailed;
}

// shared by mix / rand / stats ----------------------------------------------

struct Source {
  std::string profile;
  std::string table;
};

struct Resolved {
  BooleanMap f;
  std::optional<std::size_t> profileB;
  std::string label;
};

Resolved resolve(const Source& s) {
  if (!s.profile.empty() && !s.table.empty()) throw UsageError("give either --profile or --table");
  if (!s.profile.empty()) {
    const auto& p = builtinProfile(s.profile);
    return {p.f, p.b, "profile " + s.profile};
  }
  if (!s.table.empty()) return {parseFunctionTable(s.table), std::nullopt, "table"};
  throw UsageError("one of --profile or --table is required");
}

void addSource(CLI::App* app, Source& s) {
  app->add_option("--profile", s.profile, "Built-in function a..e");
  app->add_option("--table", s.table, "Function table '[f(0),f(1),...]'");
}

// mix -----------------------------------------------------------------------

struct Mix {
  Common common;
  Source source;
  double epsilon = 1e-4;
  bool sweep = false;
  bool trace = false;
  std::size_t cap = 1'000'000;
};

int mix(const Mix& o, std::ostream& out) {
  const auto r = resolve(o.source);
  const auto m = markovOf(buildIterationGraph(r.f));
  MixingOptions options;
  options.cap = o.cap;
  const auto eps = o.sweep ? defaultEpsilonSweep() : std::vector<double>{o.epsilon};
  const auto reports = mixingSweep(m, eps, options);
  bool allMixed = true;
  if (o.common.json) {
    json doc;
    doc["source"] = r.label;
    doc["n"] = r.f.bits();
    doc["profile_b"] = r.profileB ? json(*r.profileB) : json(nullptr);
    auto& list = doc["reports"] = json::array();
    for (const auto& rep : reports) {
      auto entry = json::parse(toJson(rep));
      if (!o.trace) entry.erase("trace");
      list.push_back(std::move(entry));
      allMixed = allMixed && rep.mixed();
    }
    out << doc.dump() << '\n';
  } else {
    out << r.label << " n=" << r.f.bits();
    if (r.profileB) out << " profile-b=" << *r.profileB;
    out << '\n';
    for (const auto& rep : reports) {
      out << formatReport(rep, o.trace);
      allMixed = allMixed && rep.mixed();
    }
  }
  return allMixed ? kOk : kValidationFailed;
}

// rand ----------------------------------------------------------------------

struct Rand {
  Source source;
  std::optional<std::size_t> b;
  std::string seedX;
  std::string seedS;
  std::size_t bytes = 0;
  std::string outFile;
  bool toStdout = false;
};

GeneratorConfig generatorConfig(const Resolved& r, std::optional<std::size_t> b,
                                const std::string& seedX, const std::string& seedS) {
  const auto walkLength = b ? b : r.profileB;
  if (!walkLength) throw UsageError("--b is required with --table");
  const auto x = parseHex(seedX, "--seed-x");
  if (x > allOnes(r.f.bits())) {
    throw UsageError("--seed-x " + seedX + " does not fit in " + std::to_string(r.f.bits()) + " bits");
  }
  return GeneratorConfig{r.f, *walkLength, static_cast<Word>(x), parseHex(seedS, "--seed-s")};
}

int rand(const Rand& o, std::ostream& out) {
  const auto r = resolve(o.source);
  if (o.bytes == 0) {
    if (o.b && *o.b == 0) throw UsageError("--b must be at least 1");
    return kOk;
  }
  if (o.seedX.empty() || o.seedS.empty()) throw UsageError("--seed-x and --seed-s are required");
  if (o.outFile.empty() == !o.toStdout) throw UsageError("give exactly one of --out FILE or --stdout");
  const auto config = generatorConfig(r, o.b, o.seedX, o.seedS);
  if (o.toStdout) {
    exportRaw(config, o.bytes, out);
    return kOk;
  }
  std::ofstream file(o.outFile, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot open " + o.outFile + " for writing");
  exportRaw(config, o.bytes, file);
  return kOk;
}

// stats ---------------------------------------------------------------------

struct Stats {
  Common common;
  Source source;
  std::string inFile;
  std::optional<std::size_t> b;
  std::string seedX = "0";
  std::string seedS = "0";
  std::size_t bits = 1'000'000;
  double alpha = 0.01;
};

int stats(const Stats& o, std::ostream& out) {
  std::vector<std::uint8_t> data;
  BatteryContext context;
  std::size_t count = o.bits;
  if (!o.inFile.empty()) {
    if (!o.source.profile.empty() || !o.source.table.empty()) {
      throw UsageError("give either --in or a generator source");
    }
    const auto raw = slurp(o.inFile);
    data.assign(raw.begin(), raw.end());
    count = data.size() * 8;
    context.source = o.inFile;
  } else {
    const auto r = resolve(o.source);
    const auto config = generatorConfig(r, o.b, o.seedX, o.seedS);
    data = Generator(config).bytes((count + 7) / 8);
    context = {r.f.bits(), config.b, config.seedState, config.seedStrategy, r.label};
  }
  const auto reports = miniBattery(BitView(data, count), o.alpha);
  out << (o.common.json ? batteryJson(reports, context) + "\n" : formatBattery(reports));
  const bool pass = std::all_of(reports.begin(), reports.end(), [](const auto& t) { return t.pass; });
  return pass ? kOk : kValidationFailed;
}

// oracle --------------------------------------------------------------------

int oracleVerify(int n, const Common& common, const std::string& dump, std::ostream& out) {
  const auto s = oracle::verifyTheorems(n, common.jobs);
  if (!dump.empty()) {
    std::ofstream file(dump, std::ios::trunc);
    if (!file) throw UsageError("cannot open " + dump + " for writing");
    file << oracle::formatCycles(oracle::hamiltonianCycles(n, {}, common.jobs));
  }
  if (common.json) {
    out << json{{"n", s.n},
                {"cycles", s.cycles},
                {"orientations", s.orientations},
                {"doubly_stochastic", s.doublyStochastic},
                {"strongly_connected", s.stronglyConnected},
                {"failures", 0}}
               .dump()
        << '\n';
  } else {
    out << "n=" << s.n << " cycles=" << s.cycles << " orientations=" << s.orientations
        << " doubly-stochastic=" << s.doublyStochastic << " strongly-connected=" << s.stronglyConnected
        << " failures=0\n";
  }
  return kOk;
}

int oracleFunctions(int n, const Common& common, std::ostream& out) {
  const auto c = oracle::countBalancedFunctions(n, common.jobs);
  if (common.json) {
    out << json{{"n", n}, {"sequences", c.sequences}, {"functions", c.functions}}.dump() << '\n';
  } else {
    out << "n=" << n << " sequences=" << c.sequences << " functions=" << c.functions << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random walks on the n-cube with a Hamiltonian cycle removed", "cubewalk"};
  app.require_subcommand(1);

  auto* gray = app.add_subcommand("gray", "Balanced cyclic Gray codes")->require_subcommand(1);
  GrayGen gen;
  auto* genCmd = gray->add_subcommand("gen", "Emit balanced transition sequences");
  genCmd->add_option("--n", gen.n, "Bits")->required()->check(CLI::Range(4, 8));
  genCmd->add_option("--limit", gen.limit, "Decompositions examined per level");
  genCmd->add_flag("--totally-balanced", gen.totallyBalanced, "Keep totally balanced codes only");
  addCommon(genCmd, gen.common, true);

  int countN = 0;
  Common countCommon;
  auto* countCmd = gray->add_subcommand("count", "Number of decompositions");
  countCmd->add_option("--n", countN, "Bits")->required()->check(CLI::Range(3, 24));
  addCommon(countCmd, countCommon, false);

  auto* func = app.add_subcommand("func", "Functions from Gray codes")->require_subcommand(1);
  FuncBuild build;
  auto* buildCmd = func->add_subcommand("build", "Gray code -> function table");
  auto* codeOpt = buildCmd->add_option("--code", build.codeFile, "File holding the code");
  auto* inlineOpt = buildCmd->add_option("--inline", build.inlineSeq, "Comma-separated code");
  codeOpt->excludes(inlineOpt);
  buildCmd->add_flag("--words", build.words, "Input lists codewords instead of transitions");
  addCommon(buildCmd, build.common, false);

  std::string checkTable;
  Common checkCommon;
  auto* checkCmd = func->add_subcommand("check", "Doubly stochastic / strongly connected verdict");
  checkCmd->add_option("--table", checkTable, "Function table")->required();
  addCommon(checkCmd, checkCommon, false);

  Mix mixOpts;
  auto* mixCmd = app.add_subcommand("mix", "Mixing time of the walk");
  addSource(mixCmd, mixOpts.source);
  mixCmd->add_option("--epsilon", mixOpts.epsilon, "Total variation threshold");
  mixCmd->add_flag("--sweep", mixOpts.sweep, "Thresholds 1e-1 .. 1e-8");
  mixCmd->add_flag("--trace", mixOpts.trace, "Print the distance at every t");
  mixCmd->add_option("--cap", mixOpts.cap, "Largest t tried")->check(CLI::PositiveNumber);
  addCommon(mixCmd, mixOpts.common, false);

  Rand randOpts;
  auto* randCmd = app.add_subcommand("rand", "Raw generator bytes");
  addSource(randCmd, randOpts.source);
  randCmd->add_option("--b", randOpts.b, "Walk length per block");
  randCmd->add_option("--seed-x", randOpts.seedX, "Initial state (hex)");
  randCmd->add_option("--seed-s", randOpts.seedS, "Strategy seed (hex)");
  randCmd->add_option("--bytes", randOpts.bytes, "Byte count")->required();
  randCmd->add_option("--out", randOpts.outFile, "Output file");
  randCmd->add_flag("--stdout", randOpts.toStdout, "Write bytes to standard output");

  Stats statsOpts;
  auto* statsCmd = app.add_subcommand("stats", "Monobit, block-frequency, runs, chi-square");
  statsCmd->add_option("--in", statsOpts.inFile, "Raw byte file");
  addSource(statsCmd, statsOpts.source);
  statsCmd->add_option("--b", statsOpts.b, "Walk length per block");
  statsCmd->add_option("--seed-x", statsOpts.seedX, "Initial state (hex)");
  statsCmd->add_option("--seed-s", statsOpts.seedS, "Strategy seed (hex)");
  statsCmd->add_option("--bits", statsOpts.bits, "Bits drawn from the generator");
  statsCmd->add_option("--alpha", statsOpts.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
  addCommon(statsCmd, statsOpts.common, false);

  auto* oracleCmd = app.add_subcommand("oracle", "Exhaustive checks for small n")->require_subcommand(1);
  int verifyN = 0;
  std::string dump;
  Common verifyCommon;
  auto* verifyCmd = oracleCmd->add_subcommand("verify", "Every cycle removal is DS and SC");
  verifyCmd->add_option("--n", verifyN, "Bits")->required()->check(CLI::Range(2, 4));
  verifyCmd->add_option("--dump", dump, "Write the canonical cycles to FILE");
  addCommon(verifyCmd, verifyCommon, true);
  int functionsN = 0;
  Common functionsCommon;
  auto* functionsCmd = oracleCmd->add_subcommand("functions", "Distinct functions from the pipeline");
  functionsCmd->add_option("--n", functionsN, "Bits")->required()->check(CLI::Range(4, 6));
  addCommon(functionsCmd, functionsCommon, true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (genCmd->parsed()) return grayGen(gen, out);
    if (countCmd->parsed()) return grayCount(countN, countCommon, out);
    if (buildCmd->parsed()) {
      if (build.codeFile.empty() && build.inlineSeq.empty()) throw UsageError("give --code or --inline");
      return funcBuild(build, out);
    }
    if (checkCmd->parsed()) return funcCheck(checkTable, checkCommon, out);
    if (mixCmd->parsed()) return mix(mixOpts, out);
    if (randCmd->parsed()) return rand(randOpts, out);
    if (statsCmd->parsed()) return stats(statsOpts, out);
    if (verifyCmd->parsed()) return oracleVerify(verifyN, verifyCommon, dump, out);
    if (functionsCmd->parsed()) return oracleFunctions(functionsN, functionsCommon, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const oracle::TheoremViolation& e) {
    err << "violation: " << e.what() << '\n';
    return kValidationFailed;
  } catch (const InsufficientData& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ExportError& e) {
    err << "error: " << e.what() << " after " << e.written() << " bytes\n";
    return kValidationFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return kValidationFailed;
  }
  return kUsage;
}

}  // namespace cubewalk::cli
