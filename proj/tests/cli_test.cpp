#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  std::string cmd = std::string(CANONC_BIN) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string fixture(const std::string& name) { return std::string(CANONC_FIXTURES) + "/" + name; }

fs::path scratch(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / "canonc_cli_tests";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

TEST(Cli, NormalizeIsIdempotent) {
  Result once = run("normalize " + fixture("corpus/ledger.c"));
  ASSERT_EQ(once.status, 0);
  fs::path p = scratch("ledger_norm.c", once.out);
  Result twice = run("normalize " + p.string());
  ASSERT_EQ(twice.status, 0);
  EXPECT_EQ(twice.out, once.out);
}

TEST(Cli, NormalizeOnlyRule) {
  fs::path p = scratch("or.c", "long f(long x, long y) { return x || y; }\n");
  Result r = run("normalize --only logical-ops " + p.string());
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "long f(long x, long y) {\n    return !(!x && !y);\n}\n");
  EXPECT_EQ(run("normalize --only bogus " + p.string()).status, 64);
}

TEST(Cli, NormalizeWritesOutputFile) {
  fs::path out = fs::temp_directory_path() / "canonc_cli_tests" / "out.c";
  fs::remove(out);
  ASSERT_EQ(run("normalize " + fixture("perm_shared.c") + " -o " + out.string()).status, 0);
  EXPECT_TRUE(fs::exists(out));
}

TEST(Cli, InputErrors) {
  fs::path bad = scratch("goto.c", "long f(long x) { goto end; return x; }\n");
  EXPECT_EQ(run("normalize " + bad.string()).status, 1);
  EXPECT_EQ(run("normalize /nonexistent/file.c").status, 1);
  EXPECT_EQ(run("frobnicate").status, 64);
  EXPECT_EQ(run("").status, 64);
}

TEST(Cli, FixpointExitCode) {
  EXPECT_EQ(run("normalize --max-iterations 1 " + fixture("corpus/numeric.c")).status, 2);
}

TEST(Cli, DisguiseSeeds) {
  std::string f = fixture("corpus/numeric.c");
  Result a = run("disguise --seed 7 " + f);
  Result b = run("disguise --seed 7 " + f);
  Result c = run("disguise --seed 8 " + f);
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, DisguiseZeroIntensityMatchesNormalizeNothing) {
  std::string f = fixture("corpus/textscan.c");
  Result d = run("disguise --seed 3 --intensity 0 " + f);
  Result n = run("normalize --only x " + f);
  ASSERT_EQ(d.status, 0);
  EXPECT_EQ(n.status, 64);
  fs::path p = scratch("ts.c", d.out);
  EXPECT_EQ(run("disguise --seed 9 --intensity 0 " + p.string()).out, d.out);
  EXPECT_EQ(run("disguise --intensity 1.5 " + f).status, 64);
}

TEST(Cli, CompareJson) {
  Result r = run("compare --json --normalize " + fixture("perm_for.c") + " " + fixture("perm_while.c"));
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"file_a", "file_b", "normalized", "jaccard", "containment_a", "containment_b", "shared",
                          "total_a", "total_b", "k", "w"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["normalized"], true);
  EXPECT_DOUBLE_EQ(j["jaccard"].get<double>(), 1.0);
  EXPECT_EQ(j["k"], 5);
  EXPECT_EQ(j["w"], 4);
}

TEST(Cli, CompareRejectsBadParameters) {
  std::string f = fixture("perm_shared.c");
  EXPECT_EQ(run("compare --k 0 " + f + " " + f).status, 64);
  EXPECT_EQ(run("compare --w -2 " + f + " " + f).status, 64);
  Result r = run("compare --k 3 --w 2 " + f + " " + f);
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("1.0000"), std::string::npos);
}

TEST(Cli, Bench) {
  Result r = run("bench --sizes 1000 --json");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 1u);
  EXPECT_EQ(j["rows"][0]["lines"], 1000);
  EXPECT_TRUE(j.contains("environment"));
}

}  // namespace
