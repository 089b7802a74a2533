#include <gtest/gtest.h>

#include "canonc/errors.hpp"
#include "canonc/fingerprint.hpp"
#include "canonc/lexer.hpp"

namespace canonc {
namespace {

std::vector<std::string> seq(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

TEST(Fingerprint, TokenClasses) {
  auto toks = tokenize("while (abc < 10) x = 'c' + 2.5;");
  EXPECT_EQ(token_classes(toks),
            seq({"while", "(", "ID", "<", "LIT", ")", "ID", "=", "LIT", "+", "LIT", ";"}));
}

TEST(Fingerprint, WindowsPickRightmostMinimum) {
  auto s = seq({"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"});
  FingerprintSet fp = winnow(s, 3, 4);
  // 8 grams, windows start at 0..4; every chosen position lies in its window
  ASSERT_FALSE(fp.empty());
  for (std::size_t i = 1; i < fp.hashes.size(); ++i) EXPECT_LT(fp.hashes[i - 1].position, fp.hashes[i].position);
  for (const auto& f : fp.hashes) EXPECT_LT(f.position, 8u);
}

TEST(Fingerprint, RepeatedGramsPreferRightmost) {
  auto s = seq({"x", "x", "x", "x", "x", "x"});
  FingerprintSet fp = winnow(s, 2, 3);
  // five equal grams, windows [0,2] [1,3] [2,4]: rightmost minima 2, 3, 4
  ASSERT_EQ(fp.hashes.size(), 3u);
  EXPECT_EQ(fp.hashes[0].position, 2u);
  EXPECT_EQ(fp.hashes[2].position, 4u);
  EXPECT_EQ(fp.distinct().size(), 1u);
}

TEST(Fingerprint, ShortInputs) {
  EXPECT_TRUE(winnow(seq({"a", "b"}), 5, 4).empty());
  EXPECT_EQ(winnow(seq({"a", "b", "c", "d", "e", "f"}), 5, 4).hashes.size(), 1u);
}

TEST(Fingerprint, Similarity) {
  auto a = fingerprint_source("long f(long x) { return x * 2 + 1; }");
  auto b = fingerprint_source("long g(long y) { return y * 3 + 7; }");
  auto c = fingerprint_source("long h() { while (1) { break; } return 0; }");
  SimilarityReport same = similarity(a, b);
  EXPECT_DOUBLE_EQ(same.jaccard, 1.0);
  EXPECT_EQ(same.shared, same.total_a);
  SimilarityReport diff = similarity(a, c);
  EXPECT_LT(diff.jaccard, 0.5);
  EXPECT_LE(diff.jaccard, diff.containment_a);
}

TEST(Fingerprint, EmptySetsAreIdentical) {
  auto r = similarity(fingerprint_source(""), fingerprint_source("  "));
  EXPECT_DOUBLE_EQ(r.jaccard, 1.0);
  EXPECT_DOUBLE_EQ(r.containment_a, 1.0);
}

TEST(Fingerprint, ParameterErrors) {
  auto s = seq({"a", "b", "c"});
  EXPECT_THROW(winnow(s, 0, 4), ParameterError);
  EXPECT_THROW(winnow(s, 5, 0), ParameterError);
  EXPECT_THROW(similarity(winnow(s, 2, 2), winnow(s, 3, 2)), ParameterError);
}

}  // namespace
}  // namespace canonc
