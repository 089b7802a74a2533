#include <gtest/gtest.h>

#include <climits>

#include "canonc/errors.hpp"
#include "canonc/oracle.hpp"
#include "canonc/parser.hpp"

namespace canonc {
namespace {

Outcome run(const std::string& src, std::vector<std::int64_t> args, std::int64_t fuel = kDefaultFuel) {
  auto u = parse_source(src);
  return evaluate(u, u.functions.back().name, args, fuel);
}

TEST(Oracle, Arithmetic) {
  EXPECT_EQ(run("long f(long a, long b) { return a * b - a / b + a % b; }", {17, 5}), Outcome::returned(85 - 3 + 2));
  EXPECT_EQ(run("long f(long a) { return (a >> 1) + (a << 2) + (a & 6) + (a | 1) + (a ^ 3) + ~a; }", {-7}),
            Outcome::returned((-7 >> 1) + (-7 * 4) + (-7 & 6) + (-7 | 1) + (-7 ^ 3) + ~-7));
  EXPECT_EQ(run("long f(long a) { return -a; }", {LLONG_MIN}), Outcome::returned(LLONG_MIN));
  EXPECT_EQ(run("long f(long a, long b) { return a / b + a % b; }", {LLONG_MIN, -1}), Outcome::returned(LLONG_MIN));
}

TEST(Oracle, Traps) {
  EXPECT_EQ(run("long f(long a) { return 1 / a; }", {0}), Outcome::trapped_with(TrapKind::DivideByZero));
  EXPECT_EQ(run("long f(long a) { return 1 % a; }", {0}), Outcome::trapped_with(TrapKind::ModByZero));
  EXPECT_EQ(run("long f(long a) { return 1 << a; }", {64}), Outcome::trapped_with(TrapKind::ShiftOutOfRange));
  EXPECT_EQ(run("long f(long a) { return 1 >> a; }", {-1}), Outcome::trapped_with(TrapKind::ShiftOutOfRange));
  EXPECT_EQ(run("long f(long a) { while (1) a++; return a; }", {0}), Outcome::trapped_with(TrapKind::FuelExhausted));
  EXPECT_EQ(run("long f(long a) { return f(a + 1); }", {0}), Outcome::trapped_with(TrapKind::FuelExhausted));
}

TEST(Oracle, ControlFlowAndGlobals) {
  const char* src =
      "long hits;\n"
      "long bump(long k) { hits += k; return hits; }\n"
      "long f(long n) {\n"
      "  long i, s = 0;\n"
      "  for (i = 0; i < n; i++) { if (i == 3) continue; if (i > 6) break; s += i; }\n"
      "  do { s--; } while (s > 20);\n"
      "  switch (n) { case 1: s += 100; case 2: s += 10; break; default: s += 1; }\n"
      "  return s + bump(2) + bump(3) + (0 && bump(100)) + (1 || bump(100));\n"
      "}\n";
  EXPECT_EQ(run(src, {10}), Outcome::returned(18 + 2 + 5 + 0 + 1));
  EXPECT_EQ(run(src, {1}), Outcome::returned(-1 + 110 + 2 + 5 + 0 + 1));
}

TEST(Oracle, PostAndPreIncrement) {
  EXPECT_EQ(run("long f(long a) { long b = a++; long c = ++a; return b * 100 + c * 10 + a; }", {1}),
            Outcome::returned(100 + 30 + 3));
}

TEST(Oracle, Errors) {
  auto u = parse_source("long f(long a) { return a; }");
  std::vector<std::int64_t> none;
  EXPECT_THROW(evaluate(u, "g", none), EvalError);
  EXPECT_THROW(evaluate(u, "f", none), EvalError);
  auto fl = parse_source("double f(double a) { return a * 1.5; }");
  std::vector<std::int64_t> one = {1};
  EXPECT_THROW(evaluate(fl, "f", one), EvalError);
}

TEST(Oracle, EquivalenceFindsCounterexample) {
  auto a = parse_source("long f(long x) { return x * 2; }");
  auto b = parse_source("long f(long x) { return x + x; }");
  auto c = parse_source("long f(long x) { if (x == 7) return 0; return x + x; }");
  EXPECT_TRUE(equivalent(a, b, "f").equivalent);
  Verdict v = equivalent(a, c, "f", 500, 3);
  EXPECT_FALSE(v.equivalent);
  ASSERT_EQ(v.args.size(), 1u);
  EXPECT_EQ(v.args[0], 7);
}

TEST(Oracle, RandomArgumentsAreSeeded) {
  auto a = random_arguments(3, 50, 9);
  EXPECT_EQ(a, random_arguments(3, 50, 9));
  EXPECT_NE(a, random_arguments(3, 50, 10));
  ASSERT_EQ(a.size(), 50u);
  int small = 0;
  for (const auto& v : a)
    for (auto x : v) small += (x >= -16 && x <= 16);
  EXPECT_GT(small, 100);
}

TEST(Oracle, OutcomeText) {
  EXPECT_EQ(Outcome::returned(5).to_string(), "Returned(5)");
  EXPECT_EQ(Outcome::trapped_with(TrapKind::ModByZero).to_string(), "Trap(mod-by-zero)");
}

}  // namespace
}  // namespace canonc
