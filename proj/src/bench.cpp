#include "canonc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>

#include "canonc/emitter.hpp"
#include "canonc/errors.hpp"
#include "canonc/normalizer.hpp"
#include "canonc/parser.hpp"

namespace canonc {

namespace {

enum class Loop { None, For, While, Switch };

class Synth {
 public:
  explicit Synth(std::uint64_t seed) : rng_(seed) {}

  std::string program(std::size_t target) {
    std::size_t remaining = target;
    if (target >= 60) {
      for (int g = 0; g < 3; ++g) {
        std::string name = "g" + std::to_string(g);
        line("long " + name + " = " + std::to_string(between(0, 9)) + ";");
        globals_.push_back(name);
      }
      remaining -= 3;
    }
    while (remaining > 0) {
      std::size_t size = remaining;
      if (remaining > 120) size = static_cast<std::size_t>(between(25, 70));
      function(static_cast<int>(size));
      remaining -= size;
    }
    std::string text;
    for (const std::string& l : out_) {
      text += l;
      text += '\n';
    }
    return text;
  }

 private:
  struct Scope {
    std::vector<std::string> vars;   // assignable
    std::vector<std::string> fixed;  // loop counters, read-only
  };

  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(int percent) { return between(0, 99) < percent; }

  template <class T>
  const T& any(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(between(0, static_cast<int>(v.size()) - 1))];
  }

  void line(const std::string& s) { out_.push_back(std::string(static_cast<std::size_t>(indent_) * 4, ' ') + s); }

  std::string fresh(char prefix) { return prefix + std::to_string(next_name_++); }

  std::vector<std::string> assignable() const {
    std::vector<std::string> v = globals_;
    for (const Scope& s : scopes_) v.insert(v.end(), s.vars.begin(), s.vars.end());
    return v;
  }

  std::vector<std::string> readable() const {
    std::vector<std::string> v = assignable();
    for (const Scope& s : scopes_) v.insert(v.end(), s.fixed.begin(), s.fixed.end());
    return v;
  }

  std::string operand() {
    int r = between(0, 99);
    if (r < 70) return any(readable());
    if (r < 95) return std::to_string(between(0, 9));
    return "'" + std::string(1, static_cast<char>('a' + between(0, 25))) + "'";
  }

  std::string expr(int depth) {
    if (depth == 0 || chance(30)) return operand();
    std::string x = expr(depth - 1);
    std::string y = expr(depth - 1);
    switch (between(0, 19)) {
      case 0:
      case 1:
      case 2: return "(" + x + " + " + y + ")";
      case 3:
      case 4: return "(" + x + " - " + y + ")";
      case 5:
      case 6: return "(" + x + " * " + y + ")";
      case 7: return "(" + x + " / (" + y + " | 1))";
      case 8: return "(" + x + " % (" + y + " | 1))";
      case 9: return "(" + x + (chance(50) ? " << (" : " >> (") + y + " & 7))";
      case 10: return "(" + x + " & " + y + ")";
      case 11: return "(" + x + " | " + y + ")";
      case 12: return "(" + x + " ^ " + y + ")";
      case 13:
      case 14: {
        static const char* rel[] = {" < ", " > ", " <= ", " >= ", " == ", " != "};
        return "(" + x + rel[between(0, 5)] + y + ")";
      }
      case 15: return "(" + x + (chance(50) ? " && " : " || ") + y + ")";
      case 16: return "(-" + x + ")";
      case 17: return "(!" + x + ")";
      case 18: return "(~" + x + ")";
      default: return "(" + x + " + " + std::to_string(between(1, 9)) + ")";
    }
  }

  std::string cond() {
    static const char* rel[] = {" < ", " > ", " <= ", " >= ", " == ", " != "};
    if (chance(70)) return any(readable()) + rel[between(0, 5)] + expr(1);
    return expr(2);
  }

  std::string simple(bool allow_decl) {
    const std::vector<std::string> targets = assignable();
    const std::string& v = any(targets);
    int r = between(0, 99);
    if (allow_decl && r < 10) {
      std::string name = fresh('v');
      std::string s = "long " + name + " = " + expr(2) + ";";
      scopes_.back().vars.push_back(name);
      return s;
    }
    if (r < 40) return v + " = " + expr(2) + ";";
    if (r < 65) {
      switch (between(0, 9)) {
        case 0: return v + " += " + expr(2) + ";";
        case 1: return v + " -= " + expr(2) + ";";
        case 2: return v + " *= " + expr(1) + ";";
        case 3: return v + " /= (" + expr(1) + " | 1);";
        case 4: return v + " %= (" + expr(1) + " | 1);";
        case 5: return v + " <<= (" + expr(1) + " & 7);";
        case 6: return v + " >>= (" + expr(1) + " & 7);";
        case 7: return v + " &= " + expr(1) + ";";
        case 8: return v + " |= " + expr(1) + ";";
        default: return v + " ^= " + expr(1) + ";";
      }
    }
    if (r < 80) {
      static const char* steps[] = {"++", "--"};
      const char* s = steps[between(0, 1)];
      return chance(50) ? v + s + ";" : s + v + ";";
    }
    const std::string& w = any(targets);
    return v + " = " + expr(1) + ", " + w + " = " + expr(1) + ";";
  }

  // Emits exactly `budget` lines of statements.
  void fill(int budget, int depth, Loop loop) {
    while (budget > 0) budget -= statement(budget, depth, loop);
  }

  int block_body(int budget, int depth, Loop loop) {
    ++indent_;
    scopes_.emplace_back();
    fill(budget, depth + 1, loop);
    scopes_.pop_back();
    --indent_;
    return budget;
  }

  int statement(int budget, int depth, Loop loop) {
    const std::size_t before = out_.size();
    const bool allow_decl = loop != Loop::Switch;
    if (budget >= 3 && depth < 3 && chance(35)) {
      int room = std::min(budget, 12);
      int kind = between(0, 6);
      if (kind == 0 || (kind == 5 && room < 8)) {
        int inner = between(1, room - 2);
        line("if (" + cond() + ") {");
        block_body(inner, depth, loop);
        line("}");
      } else if (kind == 1 && room >= 5) {
        int a = between(1, room - 4);
        int b = between(1, room - 3 - a);
        line("if (" + cond() + ") {");
        block_body(a, depth, loop);
        line("} else {");
        block_body(b, depth, loop);
        line("}");
      } else if (kind == 2) {
        std::string c = fresh('c');
        int inner = between(1, room - 2);
        line("for (long " + c + " = 0; " + c + " < " + std::to_string(between(2, 5)) + "; " + c + "++) {");
        scopes_.emplace_back();
        scopes_.back().fixed.push_back(c);
        block_body(inner, depth, Loop::For);
        scopes_.pop_back();
        line("}");
      } else if (kind == 3 && room >= 5 && allow_decl) {
        std::string c = fresh('c');
        int inner = between(1, room - 4);
        line("long " + c + " = 0;");
        scopes_.back().fixed.push_back(c);
        line("while (" + c + " < " + std::to_string(between(2, 5)) + ") {");
        block_body(inner, depth, Loop::While);
        ++indent_;
        line(c + "++;");
        --indent_;
        line("}");
      } else if (kind == 4 && room >= 5 && allow_decl) {
        std::string c = fresh('c');
        int inner = between(1, room - 4);
        line("long " + c + " = 0;");
        scopes_.back().fixed.push_back(c);
        line("do {");
        block_body(inner, depth, Loop::While);
        ++indent_;
        line(c + " += 1;");
        --indent_;
        line("} while (" + c + " < " + std::to_string(between(2, 5)) + ");");
      } else if (kind == 5 && room >= 8) {
        // switch + 3 labelled arms with one statement each + default arm
        line("switch (" + expr(1) + " & 3) {");
        int used = 1;
        for (int label = 0; label < 3 && used + 5 <= room; ++label) {
          line("case " + std::to_string(label) + ":");
          ++indent_;
          line(simple(false));
          used += 2;
          if (chance(75) && used + 4 <= room) {
            line("break;");
            ++used;
          }
          --indent_;
        }
        line("default:");
        ++indent_;
        line(simple(false));
        --indent_;
        line("}");
      } else if (kind == 6 && loop != Loop::None && loop != Loop::Switch) {
        bool cont = loop == Loop::For && chance(40);
        line("if (" + cond() + ") {");
        ++indent_;
        line(cont ? "continue;" : "break;");
        --indent_;
        line("}");
      }
    }
    if (out_.size() == before) line(simple(allow_decl));
    return static_cast<int>(out_.size() - before);
  }

  void function(int size) {
    const std::string name = "f" + std::to_string(functions_);
    next_name_ = 0;
    line("long " + name + "(long a, long b) {");
    ++indent_;
    scopes_.assign(1, Scope{{"a", "b"}, {}});
    int budget = size - 3;
    int decls = budget >= 6 ? 2 : budget >= 2 ? 1 : 0;
    for (int d = 0; d < decls; ++d) {
      std::string x = fresh('v');
      std::string y = fresh('v');
      line("long " + x + " = " + expr(1) + ", " + y + " = " + expr(1) + ";");
      scopes_.back().vars.push_back(x);
      scopes_.back().vars.push_back(y);
      --budget;
    }
    if (functions_ > 0 && budget >= 1) {
      int callee = std::max(0, functions_ - between(1, 4));
      line(any(scopes_.back().vars) + " = f" + std::to_string(callee) + "(" + expr(1) + ", " + expr(1) + ");");
      --budget;
    }
    fill(budget, 0, Loop::None);
    line("return " + expr(2) + ";");
    --indent_;
    line("}");
    ++functions_;
  }

  std::mt19937_64 rng_;
  std::vector<std::string> out_;
  std::vector<std::string> globals_;
  std::vector<Scope> scopes_;
  int indent_ = 0;
  int next_name_ = 0;
  int functions_ = 0;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string generate_synthetic(std::size_t lines, std::uint64_t seed) {
  if (lines < 10) throw ParameterError("InvalidParameter", "synthetic programs need at least 10 lines");
  return Synth(seed).program(lines);
}

BenchReport run_bench(std::span<const std::size_t> sizes, std::uint64_t seed) {
  if (sizes.empty()) throw ParameterError("InvalidParameter", "no sizes given");
  std::vector<std::size_t> sorted(sizes.begin(), sizes.end());
  std::sort(sorted.begin(), sorted.end());
  BenchReport report;
  report.environment = "single-threaded, in-memory sources, pass 2 includes emission";
#if defined(__clang__)
  report.environment += ", clang " __clang_version__;
#elif defined(__GNUC__)
  report.environment += ", gcc " __VERSION__;
#endif
  for (std::size_t n : sorted) {
    const std::string source = generate_synthetic(n, seed);
    auto t0 = std::chrono::steady_clock::now();
    TranslationUnit unit = parse_source(source);
    double p1 = seconds_since(t0);
    auto t1 = std::chrono::steady_clock::now();
    std::string out = emit(normalize(unit));
    double p2 = seconds_since(t1);
    report.rows.push_back({n, p1, p2, p1 + p2});
  }
  return report;
}

std::string format_table(const BenchReport& report) {
  std::string out = "Lines of Code   Pass 1 (Sec)   Pass 2 (Sec)   Total (Sec)\n";
  char buf[128];
  for (const BenchRow& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%13zu   %12.1f   %12.1f   %11.1f\n", r.lines, r.pass1_seconds,
                  r.pass2_seconds, r.total_seconds);
    out += buf;
  }
  return out;
}

}  // namespace canonc
