#include <gtest/gtest.h>

#include "canonc/errors.hpp"
#include "canonc/parser.hpp"

namespace canonc {
namespace {

std::string error_code(std::string_view src) {
  try {
    parse_source(src);
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

TEST(Parser, ParsesFunctionsAndGlobals) {
  auto u = parse_source("long g = 3;\nlong f(long a, long b) { return a + b * g; }\nint h() { return f(1, 2); }\n");
  ASSERT_EQ(u.globals.size(), 1u);
  ASSERT_EQ(u.functions.size(), 2u);
  EXPECT_EQ(u.functions[0].name, "f");
  EXPECT_EQ(u.functions[0].params.size(), 2u);
  EXPECT_EQ(u.functions[1].line, 3);
}

TEST(Parser, DropsPrototypes) {
  auto u = parse_source("long f(long a);\nlong g() { return f(2); }\nlong f(long a) { return a; }\n");
  EXPECT_EQ(u.functions.size(), 2u);
}

TEST(Parser, AcceptsTypeSpellings) {
  EXPECT_EQ(error_code("signed long int f(long int unsigned x) { long long y = x; return y; }"), "");
  EXPECT_EQ(error_code("unsigned f(unsigned char c) { return c; }"), "");
  EXPECT_EQ(error_code("short f() { return 1; }"), "UnsupportedConstruct");
}

TEST(Parser, UnsupportedConstructs) {
  EXPECT_EQ(error_code("long f(long x) { return x ? 1 : 2; }"), "UnsupportedConstruct");
  EXPECT_EQ(error_code("long f(long x) { a: return x; }"), "UnsupportedConstruct");
  EXPECT_EQ(error_code("long f(long x) { goto done; return x; }"), "UnsupportedConstruct");
  EXPECT_EQ(error_code("long f(long x) { long a[3]; return x; }"), "UnsupportedConstruct");
  EXPECT_EQ(error_code("long f(long x) { return (long) x; }"), "UnsupportedConstruct");
  EXPECT_EQ(error_code("long f(long *x) { return 1; }"), "UnsupportedConstruct");
  EXPECT_EQ(error_code("long f(long x) { return &x; }"), "UnsupportedConstruct");
}

TEST(Parser, SyntaxErrorsCarryPosition) {
  try {
    parse_source("long f(long x) {\n  return x +;\n}\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), "SyntaxError");
    EXPECT_EQ(e.pos().line, 2);
  }
}

TEST(Semantic, Checks) {
  EXPECT_EQ(error_code("long f() { return y; }"), "UndeclaredIdentifier");
  EXPECT_EQ(error_code("long f() { return 1; }\nlong f() { return 2; }"), "DuplicateFunction");
  EXPECT_EQ(error_code("long f(long x) { switch (x) { case 1: break; case 1: break; } return 0; }"),
            "DuplicateCase");
  EXPECT_EQ(error_code("long f() { break; return 0; }"), "MisplacedBreak");
  EXPECT_EQ(error_code("long f(long x) { switch (x) { case 1: continue; } return 0; }"), "MisplacedContinue");
  EXPECT_EQ(error_code("long f() { long __t_a; return 0; }"), "ReservedIdentifier");
  EXPECT_EQ(error_code("long f() { long a; long a; return 0; }"), "Redeclaration");
}

TEST(Semantic, ScopesAllowShadowing) {
  EXPECT_EQ(error_code("long f(long x) { long y = x; { long y = 2; x = y; } return y; }"), "");
  EXPECT_EQ(error_code("long f(long x) { { long y = 2; } return y; }"), "UndeclaredIdentifier");
}

TEST(Parser, CharLiteralValues) {
  EXPECT_EQ(char_literal_value("'a'"), 97);
  EXPECT_EQ(char_literal_value("'\\n'"), 10);
  EXPECT_EQ(char_literal_value("'\\0'"), 0);
  EXPECT_EQ(char_literal_value("'\\''"), 39);
}

}  // namespace
}  // namespace canonc
