// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "canonc/bench.hpp"
#include "canonc/disguiser.hpp"
#include "canonc/emitter.hpp"
#include "canonc/errors.hpp"
#include "canonc/fingerprint.hpp"
#include "canonc/normalizer.hpp"
#include "canonc/oracle.hpp"
#include "canonc/parser.hpp"
#include "test_support.hpp"

using namespace canonc;
namespace t = canonc::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

double jaccard(const TranslationUnit& a, const TranslationUnit& b) {
  return similarity(fingerprint_unit(a), fingerprint_unit(b)).jaccard;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

// -- 1 ----------------------------------------------------------------------

Check rule_goldens() {
  Check c;
  auto start = Clock::now();
  for (const auto& g : t::rule_goldens()) {
    std::string got = emit(normalize(parse_source(g.input), NormalizeConfig::only({g.rule})));
    if (got != g.expected) c.fail(g.name + " differs:\n" + got);
  }
  double secs = seconds_since(start);
  if (secs >= 1.0) c.fail("took " + std::to_string(secs) + " s");
  if (c.ok) c.detail = std::to_string(t::rule_goldens().size()) + " rules exact";
  return c;
}

// -- 2 ----------------------------------------------------------------------

struct DisguiseRow {
  std::string name;
  Transform transform;
  std::string entry;
  std::string source;
  std::vector<std::vector<std::string>> shapes;  // each shape must appear for some seed
};

const std::vector<DisguiseRow>& disguise_rows() {
  static const std::vector<DisguiseRow> rows = {
      {"for-to-while", Transform::RephraseControl, "f",
       "long f(long n)\n{\n    long i, s = 0;\n    for (i = 0; i < n; i++) {\n        s += i;\n    }\n    return s;\n}\n",
       {{"    i = 0;\n    while (i < n) {\n        s += i;\n        i++;\n    }\n"}}},
      {"if-chain-to-switch", Transform::RephraseControl, "f",
       "long f(long x)\n{\n    long r;\n    if (x == 'a') {\n        r = 1;\n    } else if (x == 'b') {\n"
       "        r = 2;\n    } else {\n        r = 3;\n    }\n    return r;\n}\n",
       {{"switch (x) {\n    case 'a':\n        r = 1;\n        break;\n    case 'b':\n        r = 2;\n        break;\n"
         "    default:\n        r = 3;"}}},
      {"swap-if-else", Transform::SwapIfElse, "f",
       "long f(long c)\n{\n    long r;\n    if (c < 3)\n        r = 1;\n    else\n        r = 2;\n    return r;\n}\n",
       {{"if (!(c < 3))\n        r = 2;\n    else\n        r = 1;"}}},
      {"rephrase-expressions", Transform::RephraseExpr, "f",
       "long f(long x, long y)\n{\n    long r = 0;\n    if (x < y)\n        r = 1;\n    ++x;\n    x += y;\n"
       "    return r + x;\n}\n",
       {{"if (!(x >= y))", "x = x + 1;", "x = x + y;"}}},
      {"reorder-operands", Transform::ReorderOperands, "f",
       "long f(long x, long y, long z)\n{\n    return x - y + z;\n}\n", {{"return z + x - y;"}}},
      {"redistribute", Transform::Distribute, "f",
       "long f(long x, long y, long z)\n{\n    long a, b;\n    a = x * (y + z);\n    b = x && (y || z);\n"
       "    return a + b;\n}\n",
       {{"a = x * y + x * z;", "b = x && y || x && z;"}}},
      {"split-merge", Transform::SplitMerge, "f",
       "long foo() { return 7; }\nlong getSomeValue() { return 11; }\n"
       "long f(long a, long b, long c, long z)\n{\n    long x = 0, y, n, r;\n"
       "    x += y = a + b + c, z = n = foo();\n    r = x + z;\n    x = getSomeValue();\n    y = x - z;\n"
       "    r += y;\n    x = (a + b) * c;\n    return r + x;\n}\n",
       {{"x += y;\n    n = foo();\n    z = n;"}, {"y = (x = getSomeValue()) - z;"}, {"x = a;\n    x += b;\n    x *= c;"}}},
      {"reorder-statements", Transform::ReorderStmts, "f",
       "long atan(long v) { return v * 3 + 1; }\n"
       "long f(long x, long PI)\n{\n    long y, z;\n    x += PI;\n    y = atan(9);\n    z = x - y;\n    return z;\n}\n",
       {{"y = atan(9);\n    x += PI;\n    z = x - y;"}}},
  };
  return rows;
}

Check disguise_shapes() {
  Check c;
  constexpr std::uint64_t kSeeds = 32;
  for (const auto& row : disguise_rows()) {
    TranslationUnit u = parse_source(row.source);
    std::vector<bool> seen(row.shapes.size(), false);
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
      DisguiseConfig cfg = DisguiseConfig::only({row.transform});
      cfg.seed = seed;
      TranslationUnit d = disguise(u, cfg);
      std::string text = emit(d);
      for (std::size_t s = 0; s < row.shapes.size(); ++s)
        if (std::all_of(row.shapes[s].begin(), row.shapes[s].end(),
                        [&](const std::string& frag) { return contains(text, frag); }))
          seen[s] = true;
      Verdict v = equivalent(u, d, row.entry, 100, seed);
      if (!v.equivalent) c.fail(row.name + " seed " + std::to_string(seed) + " changes behaviour");
    }
    for (std::size_t s = 0; s < seen.size(); ++s)
      if (!seen[s]) c.fail(row.name + " never produced shape " + std::to_string(s + 1));
  }
  if (c.ok) c.detail = std::to_string(disguise_rows().size()) + " rows, shapes found and oracle-equivalent";
  return c;
}

// -- 3, 4 -------------------------------------------------------------------

Check equivalent_pair() {
  Check c;
  TranslationUnit l = t::load_fixture("perm_for.c");
  TranslationUnit r = t::load_fixture("perm_while.c");
  double raw = jaccard(l, r);
  double norm = jaccard(normalize(l), normalize(r));
  char buf[96];
  std::snprintf(buf, sizeof buf, "raw %.4f, normalized %.4f", raw, norm);
  c.detail = buf;
  if (raw > 0.5 || norm < 0.8) c.ok = false;
  return c;
}

Check faster_variant() {
  Check c;
  TranslationUnit l = normalize(t::load_fixture("perm_for.c"));
  TranslationUnit r = normalize(t::load_fixture("perm_while.c"));
  TranslationUnit f2 = normalize(t::load_fixture("perm_shared.c"));
  double pair = jaccard(l, r);
  double improved = jaccard(f2, l);
  char buf[96];
  std::snprintf(buf, sizeof buf, "shared-loop variant %.4f < equivalent pair %.4f", improved, pair);
  c.detail = buf;
  c.ok = improved < pair;
  return c;
}

// -- 5 ----------------------------------------------------------------------

Check sweep() {
  Check c;
  auto start = Clock::now();
  std::vector<double> raw, norm;
  double worst = 1.0;
  std::string worst_at;
  for (const auto& p : t::corpus()) {
    TranslationUnit u = t::load_fixture(p.file);
    TranslationUnit nu = normalize(u);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      DisguiseConfig cfg;
      cfg.seed = seed;
      TranslationUnit d = disguise(u, cfg);
      raw.push_back(jaccard(u, d));
      double s = jaccard(nu, normalize(d));
      norm.push_back(s);
      if (s < worst) {
        worst = s;
        worst_at = p.file + " seed " + std::to_string(seed);
      }
    }
  }
  double secs = seconds_since(start);
  double mr = median(raw), mn = median(norm);
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu runs, median raw %.4f, median normalized %.4f, min %.4f (%s), %.1f s",
                raw.size(), mr, mn, worst, worst_at.c_str(), secs);
  c.detail = buf;
  c.ok = mr <= 0.5 && mn >= 0.9 && worst >= 0.8 && secs < 120;
  return c;
}

// -- 6 ----------------------------------------------------------------------

std::vector<std::pair<std::string, std::string>> fixture_sources() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const char* f : {"perm_for.c", "perm_while.c", "perm_shared.c"}) out.emplace_back(f, t::read_fixture(f));
  for (const auto& p : t::corpus()) out.emplace_back(p.file, t::read_fixture(p.file));
  for (const auto& g : t::rule_goldens()) out.emplace_back("rule " + g.name, g.input);
  for (const auto& r : disguise_rows()) out.emplace_back("disguise " + r.name, r.source);
  return out;
}

Check idempotence() {
  Check c;
  std::size_t checked = 0;
  auto check = [&](const std::string& name, const std::string& src) {
    TranslationUnit once = normalize(parse_source(src));
    if (emit(normalize(once)) != emit(once)) c.fail(name + " is not idempotent");
    ++checked;
  };
  for (const auto& [name, src] : fixture_sources()) check(name, src);
  for (std::uint64_t seed = 1; seed <= 1000; ++seed)
    check("synthetic seed " + std::to_string(seed), generate_synthetic(40 + seed % 160, seed));
  if (c.ok) c.detail = std::to_string(checked) + " programs";
  return c;
}

// -- 7 ----------------------------------------------------------------------

Check oracle_equivalence() {
  Check c;
  struct Program {
    std::string name;
    TranslationUnit unit;
    std::string entry;
  };
  std::vector<Program> programs;
  for (const auto& p : t::corpus()) programs.push_back({p.file, t::load_fixture(p.file), p.entry});
  for (const auto& r : disguise_rows()) programs.push_back({"disguise " + r.name, parse_source(r.source), r.entry});
  for (const char* f : {"perm_for.c", "perm_while.c", "perm_shared.c"}) {
    TranslationUnit u = t::load_fixture(f);
    std::string entry = t::last_function(u);
    programs.push_back({f, std::move(u), entry});
  }
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    TranslationUnit u = parse_source(generate_synthetic(60 + seed * 5, seed));
    std::string entry = t::last_function(u);
    programs.push_back({"synthetic " + std::to_string(seed), std::move(u), entry});
  }

  std::size_t disguised = 0, normalized = 0, skipped = 0;
  for (const auto& p : programs) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      DisguiseConfig cfg;
      cfg.seed = seed;
      Verdict v = equivalent(p.unit, disguise(p.unit, cfg), p.entry, 100, seed);
      if (!v.equivalent) c.fail(p.name + ": disguise seed " + std::to_string(seed) + " gives " + v.b.to_string() +
                                " instead of " + v.a.to_string());
      ++disguised;
    }
    NormalizeStats stats;
    TranslationUnit n = normalize(p.unit, {}, &stats);
    if (stats.division_distributions > 0) {
      ++skipped;
      continue;
    }
    Verdict v = equivalent(p.unit, n, p.entry, 100, 77);
    if (!v.equivalent)
      c.fail(p.name + ": normalize gives " + v.b.to_string() + " instead of " + v.a.to_string());
    ++normalized;
  }
  if (c.ok)
    c.detail = std::to_string(disguised) + " disguised and " + std::to_string(normalized) +
               " normalized programs agree; " + std::to_string(skipped) + " skipped for division distribution";
  return c;
}

// -- 8 ----------------------------------------------------------------------

Check winnowing() {
  Check c;
  const int k = kDefaultK, w = kDefaultW;
  std::mt19937_64 rng(2024);
  auto random_seq = [&](std::size_t n) {
    std::vector<std::string> s(n);
    for (auto& x : s) x = "t" + std::to_string(rng() % 12);
    return s;
  };
  auto plant = [&](std::vector<std::string>& s, const std::vector<std::string>& run) {
    std::size_t at = rng() % (s.size() - run.size() + 1);
    std::copy(run.begin(), run.end(), s.begin() + static_cast<std::ptrdiff_t>(at));
  };
  auto shares = [&](std::size_t run_len) {
    std::vector<std::string> a = random_seq(20 + rng() % 200);
    std::vector<std::string> b = random_seq(20 + rng() % 200);
    std::vector<std::string> run = random_seq(run_len);
    plant(a, run);
    plant(b, run);
    return similarity(winnow(a, k, w), winnow(b, k, w)).shared > 0;
  };
  int guaranteed = 0, control = 0;
  for (int i = 0; i < 1000; ++i) guaranteed += shares(w + k - 1);
  for (int i = 0; i < 1000; ++i) control += shares(k);
  c.ok = guaranteed == 1000;
  c.detail = std::to_string(guaranteed) + "/1000 pairs with a run of w+k-1 share a fingerprint; runs of k: " +
             std::to_string(control) + "/1000";
  return c;
}

// -- 9 ----------------------------------------------------------------------

Check performance() {
  Check c;
  std::vector<std::size_t> sizes = {100000, 200000, 250000};
  BenchReport r = run_bench(sizes, 1);
  double t100 = r.rows[0].total_seconds, t200 = r.rows[1].total_seconds, t250 = r.rows[2].total_seconds;
  double ratio = t200 / t100;
  char buf[160];
  std::snprintf(buf, sizeof buf, "250k lines %.2f s, total(200k)/total(100k) %.2f", t250, ratio);
  c.detail = buf;
  c.ok = t250 <= 10.0 && ratio <= 2.5;
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"normalization rule goldens", rule_goldens},
      {"disguise shapes", disguise_shapes},
      {"equivalent pair convergence", equivalent_pair},
      {"faster variant separation", faster_variant},
      {"disguise robustness sweep", sweep},
      {"idempotence", idempotence},
      {"oracle equivalence", oracle_equivalence},
      {"winnowing guarantee", winnowing},
      {"performance envelope", performance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %zu %s: %s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), c.detail.c_str());
    std::fflush(stdout);
    failed += !c.ok;
  }
  return failed ? 1 : 0;
}
