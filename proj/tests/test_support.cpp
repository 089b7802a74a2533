#include "test_support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "canonc/parser.hpp"

namespace canonc::testing {

std::string fixture_path(const std::string& name) { return std::string(CANONC_FIXTURES) + "/" + name; }

std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TranslationUnit load_fixture(const std::string& name) { return parse_source(read_fixture(name)); }

const std::vector<CorpusProgram>& corpus() {
  static const std::vector<CorpusProgram> programs = {
      {"corpus/numeric.c", "run"},
      {"corpus/ledger.c", "simulate"},
      {"corpus/textscan.c", "analyse"},
  };
  return programs;
}

std::string last_function(const TranslationUnit& unit) {
  if (unit.functions.empty()) throw std::runtime_error("no functions");
  return unit.functions.back().name;
}

const std::vector<RuleGolden>& rule_goldens() {
  static const std::vector<RuleGolden> goldens = {
      {"loops", Rule::Loops,
       R"(long f(long n)
{
    long i, s;
    s = 0;
    for (i = 0; i < n; i = i + 1)
        s = s + i;
    while (s < 100)
        s = s * 2;
    do
        s = s - 1;
    while (s > 50);
    return s;
}
)",
       R"(long f(long n) {
    long i, s;
    s = 0;
    i = 0;
    while (true) {
        if (!(i < n)) {
            break;
        }
        s = s + i;
        i = i + 1;
    }
    while (true) {
        if (!(s < 100)) {
            break;
        }
        s = s * 2;
    }
    while (true) {
        s = s - 1;
        if (!(s > 50)) {
            break;
        }
    }
    return s;
}
)"},
      {"logical-ops", Rule::LogicalOps, "long f(long x, long y) { return x || y; }\n",
       "long f(long x, long y) {\n    return !(!x && !y);\n}\n"},
      {"bitwise-ops", Rule::BitwiseOps, "long f(long x, long y) { return (x | y) + (x ^ y); }\n",
       "long f(long x, long y) {\n    return ~(~x & ~y) + ~(~(~x & y) & ~(x & ~y));\n}\n"},
      {"relational-ops", Rule::RelationalOps,
       "long f(long x, long y) { return (x > y) + (x <= y) + (x >= y) + (x != y); }\n",
       "long f(long x, long y) {\n    return (y < x) + (x < y || x == y) + (y < x || x == y) + !(x == y);\n}\n"},
      {"split-assignments", Rule::SplitAssignments,
       "long foo() { return 7; }\n"
       "long f(long a, long b, long c) { long x = 1, y, z, n; x += y = a + b + c, z = n = foo(); return x + z; }\n",
       R"(long foo() {
    return 7;
}

long f(long a, long b, long c) {
    long x = 1, y, z, n;
    y = a + b + c;
    x += y;
    n = foo();
    z = n;
    return x + z;
}
)"},
      {"merge-assignments", Rule::MergeAssignments,
       "long f(long a, long b, long c) { long x; x = a; x += b; x *= c; return x; }\n",
       "long f(long a, long b, long c) {\n    long x;\n    x = (a + b) * c;\n    return x;\n}\n"},
      {"if-negation", Rule::IfNegation, "long f(long c) { long r; if (!c) r = 1; else r = 2; return r; }\n",
       "long f(long c) {\n    long r;\n    if (c)\n        r = 2;\n    else\n        r = 1;\n    return r;\n}\n"},
      {"assignment-ops", Rule::AssignmentOps, "long f(long x, long y) { x += y; x >>= y; return x; }\n",
       "long f(long x, long y) {\n    x = x + y;\n    x = x >> y;\n    return x;\n}\n"},
      {"distribute", Rule::Distribute,
       "long f(long x, long y, long z, long k) { return x * (y - z) / k; }\n",
       "long f(long x, long y, long z, long k) {\n    return x * y / k - x * z / k;\n}\n"},
  };
  return goldens;
}

}  // namespace canonc::testing
