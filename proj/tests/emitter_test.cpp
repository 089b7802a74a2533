#include <gtest/gtest.h>

#include "canonc/emitter.hpp"
#include "canonc/parser.hpp"
#include "test_support.hpp"

namespace canonc {
namespace {

std::string body_of(const std::string& expr) {
  auto u = parse_source("long f(long a, long b, long c) { return " + expr + "; }");
  return emit(*u.functions[0].body.body[0].expr);
}

TEST(Emitter, MinimalParentheses) {
  EXPECT_EQ(body_of("((a + b)) * c"), "(a + b) * c");
  EXPECT_EQ(body_of("a - (b - c)"), "a - (b - c)");
  EXPECT_EQ(body_of("(a - b) - c"), "a - b - c");
  EXPECT_EQ(body_of("a + (b * c)"), "a + b * c");
  EXPECT_EQ(body_of("!(a < b) && (b || c)"), "!(a < b) && (b || c)");
  EXPECT_EQ(body_of("a = (b = c)"), "a = b = c");
  EXPECT_EQ(body_of("- -a"), "-(-a)");
  EXPECT_EQ(body_of("(a << 2) + 1"), "(a << 2) + 1");
}

TEST(Emitter, Layout) {
  auto u = parse_source("long g;\nlong f(long x){if(x){x++;}else x--;while(x<3)x+=1;return x;}");
  EXPECT_EQ(emit(u),
            "long g;\n\n"
            "long f(long x) {\n"
            "    if (x) {\n"
            "        x++;\n"
            "    } else\n"
            "        x--;\n"
            "    while (x < 3)\n"
            "        x += 1;\n"
            "    return x;\n"
            "}\n");
}

TEST(Emitter, RoundTripIsStable) {
  std::vector<std::string> files = {"perm_for.c", "perm_while.c", "perm_shared.c"};
  for (const auto& p : testing::corpus()) files.push_back(p.file);
  for (const auto& f : files) {
    std::string once = emit(testing::load_fixture(f));
    EXPECT_EQ(emit(parse_source(once)), once) << f;
  }
}

}  // namespace
}  // namespace canonc
