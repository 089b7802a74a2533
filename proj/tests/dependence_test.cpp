#include <gtest/gtest.h>

#include "canonc/dependence.hpp"
#include "canonc/errors.hpp"
#include "canonc/parser.hpp"

namespace canonc {
namespace {

std::vector<Stmt> block(const std::string& body, const std::string& globals = "") {
  auto u = parse_source(globals + "long h(long v) { return v; }\nlong f(long a, long b, long c, long d) {" + body +
                        "}");
  return u.functions.back().body.body;
}

TEST(Dependence, EdgeKinds) {
  auto b = block("a = 1; b = a; a = 2; a = 3; return d;");
  auto g = build_dependence_graph(b);
  ASSERT_EQ(g.size, 5u);
  EXPECT_EQ(g.find(0, 1)->kind, DepKind::Flow);
  EXPECT_EQ(g.find(1, 2)->kind, DepKind::Anti);
  EXPECT_EQ(g.find(2, 3)->kind, DepKind::Output);
  EXPECT_EQ(g.find(0, 4)->kind, DepKind::ControlBarrier);
  for (const DepEdge& e : g.edges) EXPECT_LT(e.from, e.to);
}

TEST(Dependence, IndependentStatements) {
  auto b = block("a = 1; b = 2; c = a + b;");
  auto g = build_dependence_graph(b);
  EXPECT_TRUE(independent(g, 0, 1));
  EXPECT_FALSE(independent(g, 0, 2));
  EXPECT_FALSE(independent(g, 2, 1));
  EXPECT_THROW(independent(g, 1, 1), ParameterError);
  EXPECT_THROW(independent(g, 0, 7), ParameterError);
}

TEST(Dependence, TransitivePathsBlockIndependence) {
  auto b = block("a = 1; b = a; c = b;");
  auto g = build_dependence_graph(b);
  EXPECT_FALSE(g.has_edge(0, 2));
  EXPECT_FALSE(independent(g, 0, 2));
}

TEST(Dependence, CallsAndGlobals) {
  auto b = block("a = h(1); b = h(2); g = 3; c = h(3);", "long g;\n");
  auto g = build_dependence_graph(b, {"g"});
  EXPECT_EQ(g.find(0, 1)->kind, DepKind::ControlBarrier);
  EXPECT_EQ(g.find(2, 3)->kind, DepKind::ControlBarrier);
  auto plain = build_dependence_graph(block("a = 1; b = h(2);"));
  EXPECT_TRUE(independent(plain, 0, 1));
}

TEST(Dependence, NestedStatementsAreCompound) {
  auto b = block("if (a) { b = 1; } c = b; d = 4;");
  auto g = build_dependence_graph(b);
  EXPECT_EQ(g.find(0, 1)->kind, DepKind::Flow);
  EXPECT_TRUE(independent(g, 0, 2));
}

TEST(Dependence, TopologicalOrderUsesKeys) {
  auto b = block("a = 1; b = 2; c = a + b;");
  auto g = build_dependence_graph(b);
  std::vector<std::string> keys = {"z", "y", "a"};
  EXPECT_EQ(order_topologically(g, keys), (std::vector<std::size_t>{1, 0, 2}));
  std::vector<std::string> ties = {"k", "k", "k"};
  EXPECT_EQ(order_topologically(g, ties), (std::vector<std::size_t>{0, 1, 2}));
}

}  // namespace
}  // namespace canonc
