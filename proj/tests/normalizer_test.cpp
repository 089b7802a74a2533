#include <gtest/gtest.h>

#include "canonc/emitter.hpp"
#include "canonc/errors.hpp"
#include "canonc/normalizer.hpp"
#include "canonc/oracle.hpp"
#include "canonc/parser.hpp"
#include "test_support.hpp"

namespace canonc {
namespace {

std::string norm(const std::string& src, const NormalizeConfig& cfg = {}, NormalizeStats* stats = nullptr) {
  return emit(normalize(parse_source(src), cfg, stats));
}

class RuleGoldens : public ::testing::TestWithParam<testing::RuleGolden> {};

TEST_P(RuleGoldens, OnlyThisRule) {
  const auto& g = GetParam();
  NormalizeStats stats;
  EXPECT_EQ(norm(g.input, NormalizeConfig::only({g.rule}), &stats), g.expected);
  EXPECT_GT(stats.count(g.rule), 0);
}

INSTANTIATE_TEST_SUITE_P(Rules, RuleGoldens, ::testing::ValuesIn(testing::rule_goldens()),
                         [](const auto& info) {
                           std::string n = info.param.name;
                           for (char& c : n)
                             if (c == '-') c = '_';
                           return n;
                         });

TEST(Normalizer, RuleNames) {
  EXPECT_EQ(to_string(Rule::Loops), "loops");
  EXPECT_EQ(to_string(Rule::OperandOrder), "operand-order");
}

TEST(Normalizer, NoRulesKeepsText) {
  NormalizeConfig none = NormalizeConfig::only({});
  std::string src = "long f(long a) {\n    long b;\n    b = a + 1;\n    return b;\n}\n";
  EXPECT_EQ(norm(src, none), src);
}

TEST(Normalizer, DeclarationsSplitAndRespell) {
  auto u = canonicalize_declarations(parse_source("signed long int f(long int a) { long int b = a, c; return b; }"));
  EXPECT_EQ(emit(u), "long f(long a) {\n    long b;\n    long c;\n    b = a;\n    return b;\n}\n");
}

TEST(Normalizer, PostIncrementInValueContext) {
  NormalizeConfig cfg = NormalizeConfig::only({Rule::AssignmentOps});
  EXPECT_EQ(norm("long f(long x) { long y; y = x++; return y; }", cfg),
            "long f(long x) {\n    long y;\n    y = (x = x + 1) - 1;\n    return y;\n}\n");
}

TEST(Normalizer, SwitchBecomesIfChain) {
  NormalizeConfig cfg = NormalizeConfig::only({Rule::Loops});
  std::string out = norm(
      "long f(long x) { long r = 0; switch (x) { case 1: case 2: r = 5; break; default: r = 9; } return r; }", cfg);
  EXPECT_EQ(out.find("switch"), std::string::npos);
  EXPECT_NE(out.find("if (x == 1 || x == 2) {"), std::string::npos) << out;
}

TEST(Normalizer, DoubleNegationOnlyInBooleanContext) {
  NormalizeConfig cfg = NormalizeConfig::only({Rule::DoubleNegation});
  EXPECT_EQ(norm("long f(long x) { if (!!x) return 1; return !!x; }", cfg),
            "long f(long x) {\n    if (x)\n        return 1;\n    return !!x;\n}\n");
}

TEST(Normalizer, StatementOrderIsCanonical) {
  NormalizeConfig cfg = NormalizeConfig::only({Rule::StatementOrder});
  std::string a = norm("long f(long x, long y) { x = x * 2; y = 7; return x + y; }", cfg);
  std::string b = norm("long f(long x, long y) { y = 7; x = x * 2; return x + y; }", cfg);
  EXPECT_EQ(a, b);
}

TEST(Normalizer, RenameIsPositional) {
  NormalizeConfig cfg = NormalizeConfig::only({Rule::Rename});
  EXPECT_EQ(norm("long g;\nlong f(long a) { long t; t = a + g; return t; }", cfg),
            "long g0;\n\nlong f(long p0) {\n    long v0;\n    v0 = p0 + g0;\n    return v0;\n}\n");
}

TEST(Normalizer, StatementSortKeyAbstractsNames) {
  auto u = parse_source("long f(long a, long b) { a = b + 1; b = a + 1; return a; }");
  EXPECT_EQ(statement_sort_key(u.functions[0].body.body[0]), statement_sort_key(u.functions[0].body.body[1]));
}

TEST(Normalizer, CountsDivisionDistribution) {
  NormalizeStats stats;
  norm("long f(long x, long y, long k) { return (x * y + y * 2) / k; }", {}, &stats);
  EXPECT_GT(stats.division_distributions, 0);
  NormalizeStats none;
  norm("long f(long x, long y) { return (x + y) * 3; }", {}, &none);
  EXPECT_EQ(none.division_distributions, 0);
}

TEST(Normalizer, FixpointLimit) {
  NormalizeConfig cfg;
  cfg.max_iterations = 1;
  EXPECT_THROW(norm(testing::read_fixture("corpus/numeric.c"), cfg), FixpointNotReached);
}

TEST(Normalizer, IdempotentOnFixtures) {
  std::vector<std::string> files = {"perm_for.c", "perm_while.c", "perm_shared.c"};
  for (const auto& p : testing::corpus()) files.push_back(p.file);
  for (const auto& f : files) {
    TranslationUnit once = normalize(testing::load_fixture(f));
    EXPECT_EQ(emit(normalize(once)), emit(once)) << f;
  }
}

TEST(Normalizer, PreservesBehaviourOnCorpus) {
  for (const auto& p : testing::corpus()) {
    TranslationUnit u = testing::load_fixture(p.file);
    NormalizeStats stats;
    TranslationUnit n = normalize(u, {}, &stats);
    if (stats.division_distributions > 0) continue;
    Verdict v = equivalent(u, n, p.entry, 50, 11);
    EXPECT_TRUE(v.equivalent) << p.file << ": " << v.a.to_string() << " vs " << v.b.to_string();
  }
}

}  // namespace
}  // namespace canonc
