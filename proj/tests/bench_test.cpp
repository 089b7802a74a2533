#include <gtest/gtest.h>

#include <algorithm>

#include "canonc/bench.hpp"
#include "canonc/errors.hpp"
#include "canonc/oracle.hpp"
#include "canonc/parser.hpp"
#include "test_support.hpp"

namespace canonc {
namespace {

TEST(Synthetic, ExactLineCounts) {
  for (std::size_t n : {10u, 11u, 37u, 60u, 100u, 999u, 5000u}) {
    std::string s = generate_synthetic(n, n);
    EXPECT_EQ(static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')), n) << n;
    EXPECT_NO_THROW(parse_source(s)) << n;
  }
}

TEST(Synthetic, DeterministicPerSeed) {
  EXPECT_EQ(generate_synthetic(300, 4), generate_synthetic(300, 4));
  EXPECT_NE(generate_synthetic(300, 4), generate_synthetic(300, 5));
  EXPECT_THROW(generate_synthetic(9, 1), ParameterError);
}

TEST(Synthetic, Terminates) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto u = parse_source(generate_synthetic(200, seed));
    std::vector<std::int64_t> args(u.functions.back().params.size(), 3);
    Outcome o = evaluate(u, testing::last_function(u), args);
    EXPECT_FALSE(o.trapped && o.trap == TrapKind::FuelExhausted) << seed;
  }
}

TEST(Bench, ReportsRows) {
  std::vector<std::size_t> sizes = {200, 100};
  BenchReport r = run_bench(sizes, 1);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].lines, 100u);
  EXPECT_GE(r.rows[1].total_seconds, r.rows[1].pass1_seconds);
  EXPECT_FALSE(r.environment.empty());
  EXPECT_NE(format_table(r).find("200"), std::string::npos);
}

}  // namespace
}  // namespace canonc
