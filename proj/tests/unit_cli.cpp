#include <gtest/gtest.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "markoff/cli/run.hpp"
#include "markoff/error.hpp"
#include "markoff/matseq/seed_search.hpp"

using namespace markoff;
using namespace markoff::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "markoff_lab");
  std::ostringstream out, err;
  Run r;
  r.code = run_command(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("markoff_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string str() const { return path_.string(); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  return nlohmann::json::parse(in);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, ExitCodes) {
  TempDir dir;
  EXPECT_EQ(run({"--out", dir.str(), "gen"}).code, 0);
  EXPECT_EQ(run({"--help"}).code, 0);

  const auto cap = run({"--out", dir.str(), "gen", "--k-max", "100"});
  EXPECT_EQ(cap.code, 3);
  EXPECT_NE(cap.err.find("hard cap 40"), std::string::npos);
  EXPECT_EQ(run({"--out", dir.str(), "--k-max", "100", "gen"}).code, 3);
  EXPECT_EQ(run({"--out", dir.str(), "--k-max", "1", "gen"}).code, 3);

  const auto bogus = run({"bogus"});
  EXPECT_EQ(bogus.code, 3);
  EXPECT_NE(bogus.err.find("usage error"), std::string::npos);
  EXPECT_EQ(run({}).code, 3);
  EXPECT_EQ(run({"--no-write", "mj", "--j", "9"}).code, 3);
  EXPECT_EQ(run({"--no-write", "--seed", "1,2", "gen"}).code, 3);
  EXPECT_EQ(run({"--no-write", "--seed", "1,2,3;4,5,6", "gen"}).code, 3);
}

TEST(Cli, DomainErrorsNameTheirModuleError) {
  const auto empty = run({"--no-write", "lagrange", "--n-max", "5"});
  EXPECT_EQ(empty.code, 1);
  EXPECT_NE(empty.err.find("EmptyRange"), std::string::npos);

  const auto budget = run({"--no-write", "scan", "--d", "6", "--H", "12"});
  EXPECT_EQ(budget.code, 1);
  EXPECT_NE(budget.err.find("BudgetExceeded"), std::string::npos);

  const auto unknown = run({"--no-write", "audit", "--id", "L9.9"});
  EXPECT_EQ(unknown.code, 1);
  EXPECT_NE(unknown.err.find("UnknownEstimate"), std::string::npos);

  const auto precision = run({"--no-write", "--bits", "2000", "mj", "--j", "6"});
  EXPECT_EQ(precision.code, 2);
  EXPECT_NE(precision.err.find("PrecisionExhausted"), std::string::npos);
}

TEST(Cli, MjLine) {
  const auto r = run({"--no-write", "mj", "--j", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("m_3 = 20 (unique in |m| ≤ 4000)\n"), std::string::npos);
  EXPECT_NE(r.out.find("PASS m_3"), std::string::npos);
}

TEST(Cli, VerifySummaryLine) {
  const auto r = run({"--no-write", "--seed", "canonical", "--k-max", "30", "verify"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("families: 18, rows: 535, failures: 0"), std::string::npos);
}

TEST(Cli, ReportFiles) {
  TempDir dir;
  const auto r = run({"--out", dir.str(), "gen", "--k-max", "14"});
  ASSERT_EQ(r.code, 0);
  const auto doc = read_json(dir.file("gen.json"));
  for (const char* key : {"command", "seed", "config", "rows", "summary", "failures", "header"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  EXPECT_EQ(doc["command"], "gen");
  EXPECT_EQ(doc["seed"]["x2"], nlohmann::json::array({"1", "1", "2"}));
  EXPECT_EQ(doc["rows"].size(), 14u);
  EXPECT_TRUE(doc["failures"].empty());
  EXPECT_FALSE(fs::exists(dir.file("gen.json.tmp")));

  const std::string csv = read_text(dir.file("gen.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,log2_X,x0,x1,x2,growth_ratio");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 15);
}

TEST(Cli, ReportsAreReproducible) {
  TempDir a, b;
  for (const auto* d : {&a, &b}) {
    ASSERT_EQ(run({"--out", d->str(), "--cache", d->file("seq.cache"), "delta", "--k-hi", "14"}).code, 0);
  }
  auto ja = read_json(a.file("delta.json"));
  auto jb = read_json(b.file("delta.json"));
  ja.erase("header");
  jb.erase("header");
  EXPECT_EQ(ja.dump(), jb.dump());
  EXPECT_EQ(read_text(a.file("delta.csv")), read_text(b.file("delta.csv")));
}

TEST(Cli, CacheRoundTrip) {
  TempDir dir;
  const std::string cache = dir.file("seq.cache");
  ASSERT_EQ(run({"--no-write", "--cache", cache, "gen", "--k-max", "12"}).code, 0);
  ASSERT_TRUE(fs::exists(cache));
  const auto first = run({"--out", dir.str(), "--cache", cache, "gen", "--k-max", "12"});
  ASSERT_EQ(first.code, 0);
  const auto from_cache = read_json(dir.file("gen.json"));
  const auto fresh = run({"--out", dir.str(), "gen", "--k-max", "12"});
  ASSERT_EQ(fresh.code, 0);
  auto a = from_cache;
  auto b = read_json(dir.file("gen.json"));
  a.erase("header");
  b.erase("header");
  a["config"].erase("seed_spec");
  b["config"].erase("seed_spec");
  EXPECT_EQ(a.dump(), b.dump());

  std::ofstream(cache) << "not a cache\n";
  EXPECT_EQ(run({"--no-write", "--cache", cache, "gen"}).code, 3);
}

TEST(Cli, BitsBelowScheduleWarns) {
  const auto r = run({"--no-write", "--bits", "2000", "mj", "--j", "1"});
  EXPECT_NE(r.err.find("warning: --bits 2000 is below the scheduled"), std::string::npos);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  TempDir dir;
  ::setenv(kOutputEnv, dir.str().c_str(), 1);
  const auto r = run({"seeds"});
  ::unsetenv(kOutputEnv);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(dir.file("seeds.json")));
  EXPECT_TRUE(fs::exists(dir.file("seeds.csv")));
}

TEST(Cli, ReportIndexCollectsFailures) {
  TempDir dir;
  ASSERT_EQ(run({"--out", dir.str(), "gen"}).code, 0);
  ASSERT_EQ(run({"--out", dir.str(), "report"}).code, 0);
  EXPECT_EQ(read_json(dir.file("index.json"))["rows"].size(), 1u);

  auto doc = read_json(dir.file("gen.json"));
  doc["failures"] = {"growth ratio: injected"};
  std::ofstream(dir.file("gen.json")) << doc.dump();
  const auto r = run({"--out", dir.str(), "report"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL gen.json"), std::string::npos);
}

TEST(Cli, CsvQuoting) {
  const nlohmann::json rows = nlohmann::json::array(
      {{{"a", "x,y"}, {"b", 1}}, {{"a", "say \"hi\""}, {"c", nlohmann::json::array({1, 2})}}});
  EXPECT_EQ(rows_to_csv(rows), "a,b,c\n\"x,y\",1,\n\"say \"\"hi\"\"\",,\"[1,2]\"\n");
}

TEST(Cli, ParseSeed) {
  const auto c = parse_seed("canonical");
  EXPECT_EQ(c.x2, matseq::canonical_seed().x2);
  const auto p = parse_seed("1,0,1;1,1,2");
  EXPECT_EQ(p.x1, c.x1);
  EXPECT_EQ(p.x2, c.x2);
  EXPECT_TRUE(p.admissible);
  EXPECT_THROW(parse_seed("1,0;1,1,2"), FormatError);
  EXPECT_THROW(parse_seed("1,0,x;1,1,2"), FormatError);
  EXPECT_THROW(parse_seed("1,2,3;1,1,2"), InvariantViolation);
}
