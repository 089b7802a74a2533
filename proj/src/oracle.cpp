#include "canonc/oracle.hpp"

#include <limits>
#include <random>
#include <unordered_map>

#include "canonc/errors.hpp"

namespace canonc {

std::string_view to_string(TrapKind kind) {
  switch (kind) {
    case TrapKind::DivideByZero: return "divide-by-zero";
    case TrapKind::ModByZero: return "mod-by-zero";
    case TrapKind::ShiftOutOfRange: return "shift-out-of-range";
    case TrapKind::FuelExhausted: return "fuel-exhausted";
  }
  return "?";
}

std::string Outcome::to_string() const {
  if (trapped) return "Trap(" + std::string(canonc::to_string(trap)) + ")";
  return "Returned(" + std::to_string(value) + ")";
}

namespace {

constexpr int kMaxCallDepth = 2000;

struct TrapSignal {
  TrapKind kind;
};

enum class Flow { Normal, Break, Continue, Return };

using u64 = std::uint64_t;
using i64 = std::int64_t;

i64 wrap(u64 v) { return static_cast<i64>(v); }

bool is_float(const TypeSpec& t) { return t.base == BaseType::Float || t.base == BaseType::Double; }

class Machine {
 public:
  Machine(const TranslationUnit& unit, i64 fuel) : unit_(unit), fuel_(fuel) {
    for (const FunctionDef& f : unit.functions) functions_[f.name] = &f;
  }

  i64 start(std::string_view entry, std::span<const i64> args) {
    const FunctionDef* f = lookup_function(std::string(entry));
    check_arity(*f, args.size());
    frames_.emplace_back(1);
    for (const Stmt& g : unit_.globals) {
      if (is_float(g.type)) unsupported("floating-point global");
      for (const Declarator& d : g.decls) globals_[d.name] = d.init ? eval(*d.init) : 0;
    }
    frames_.clear();
    return call(*f, std::vector<i64>(args.begin(), args.end()));
  }

 private:
  using Scope = std::unordered_map<std::string, i64>;

  [[noreturn]] static void unsupported(const std::string& what) {
    throw EvalError("UnsupportedForEvaluation", what + " cannot be evaluated");
  }

  const FunctionDef* lookup_function(const std::string& name) const {
    auto it = functions_.find(name);
    if (it == functions_.end()) throw EvalError("UnknownFunction", "no function named '" + name + "'");
    return it->second;
  }

  static void check_arity(const FunctionDef& f, std::size_t n) {
    if (f.params.size() != n)
      throw EvalError("ArityMismatch", "'" + f.name + "' takes " + std::to_string(f.params.size()) +
                                           " arguments, got " + std::to_string(n));
  }

  void tick() {
    if (--fuel_ < 0) throw TrapSignal{TrapKind::FuelExhausted};
  }

  i64* slot(const std::string& name) {
    if (!frames_.empty()) {
      auto& scopes = frames_.back();
      for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
        auto f = it->find(name);
        if (f != it->end()) return &f->second;
      }
    }
    auto g = globals_.find(name);
    if (g != globals_.end()) return &g->second;
    // Unresolved names cannot pass the semantic check; treat as a fresh zero.
    return &frames_.back().back()[name];
  }

  void declare(const std::string& name, i64 v) { frames_.back().back()[name] = v; }

  i64 call(const FunctionDef& f, std::vector<i64> args) {
    if (is_float(f.return_type)) unsupported("floating-point function '" + f.name + "'");
    if (frames_.size() >= kMaxCallDepth) throw TrapSignal{TrapKind::FuelExhausted};
    frames_.emplace_back();
    frames_.back().emplace_back();
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (is_float(f.params[i].type)) unsupported("floating-point parameter");
      declare(f.params[i].name, args[i]);
    }
    result_ = 0;
    Flow flow = exec_list(f.body.body);
    i64 r = flow == Flow::Return ? result_ : 0;
    frames_.pop_back();
    return r;
  }

  Flow exec_list(const std::vector<Stmt>& list) {
    for (const Stmt& s : list) {
      Flow f = exec(s);
      if (f != Flow::Normal) return f;
    }
    return Flow::Normal;
  }

  Flow scoped(const Stmt& s) {
    frames_.back().emplace_back();
    Flow f = exec(s);
    frames_.back().pop_back();
    return f;
  }

  Flow exec(const Stmt& s) {
    tick();
    switch (s.kind) {
      case StmtKind::Expr: eval(*s.expr); return Flow::Normal;
      case StmtKind::Decl:
        if (is_float(s.type)) unsupported("floating-point declaration");
        for (const Declarator& d : s.decls) declare(d.name, d.init ? eval(*d.init) : 0);
        return Flow::Normal;
      case StmtKind::Block: {
        frames_.back().emplace_back();
        Flow f = exec_list(s.body);
        frames_.back().pop_back();
        return f;
      }
      case StmtKind::If:
        if (eval(*s.expr)) return scoped(s.then_branch());
        if (s.has_else()) return scoped(s.else_branch());
        return Flow::Normal;
      case StmtKind::While:
        while (eval(*s.expr)) {
          Flow f = scoped(s.loop_body());
          if (f == Flow::Break) break;
          if (f == Flow::Return) return f;
        }
        return Flow::Normal;
      case StmtKind::DoWhile:
        do {
          Flow f = scoped(s.loop_body());
          if (f == Flow::Break) break;
          if (f == Flow::Return) return f;
        } while (eval(*s.expr));
        return Flow::Normal;
      case StmtKind::For: {
        frames_.back().emplace_back();
        Flow out = Flow::Normal;
        if (!s.init.empty()) exec(s.init[0]);
        while (!s.expr || eval(*s.expr)) {
          Flow f = scoped(s.loop_body());
          if (f == Flow::Break) break;
          if (f == Flow::Return) {
            out = f;
            break;
          }
          if (s.step) eval(*s.step);
        }
        frames_.back().pop_back();
        return out;
      }
      case StmtKind::Switch: {
        i64 v = eval(*s.expr);
        std::size_t start = s.cases.size();
        for (std::size_t i = 0; i < s.cases.size() && start == s.cases.size(); ++i)
          if (s.cases[i].label && eval(*s.cases[i].label) == v) start = i;
        for (std::size_t i = 0; i < s.cases.size() && start == s.cases.size(); ++i)
          if (!s.cases[i].label) start = i;
        frames_.back().emplace_back();
        Flow out = Flow::Normal;
        for (std::size_t i = start; i < s.cases.size(); ++i) {
          Flow f = exec_list(s.cases[i].body);
          if (f == Flow::Break) break;
          if (f != Flow::Normal) {
            out = f;
            break;
          }
        }
        frames_.back().pop_back();
        return out;
      }
      case StmtKind::Break: return Flow::Break;
      case StmtKind::Continue: return Flow::Continue;
      case StmtKind::Return:
        result_ = s.expr ? eval(*s.expr) : 0;
        return Flow::Return;
    }
    return Flow::Normal;
  }

  static i64 arith(BinaryOp op, i64 a, i64 b) {
    const u64 ua = static_cast<u64>(a);
    const u64 ub = static_cast<u64>(b);
    switch (op) {
      case BinaryOp::Add: return wrap(ua + ub);
      case BinaryOp::Sub: return wrap(ua - ub);
      case BinaryOp::Mul: return wrap(ua * ub);
      case BinaryOp::Div:
        if (b == 0) throw TrapSignal{TrapKind::DivideByZero};
        if (a == std::numeric_limits<i64>::min() && b == -1) return a;
        return a / b;
      case BinaryOp::Mod:
        if (b == 0) throw TrapSignal{TrapKind::ModByZero};
        if (b == -1) return 0;
        return a % b;
      case BinaryOp::Shl:
        if (b < 0 || b >= 64) throw TrapSignal{TrapKind::ShiftOutOfRange};
        return wrap(ua << b);
      case BinaryOp::Shr:
        if (b < 0 || b >= 64) throw TrapSignal{TrapKind::ShiftOutOfRange};
        return a >> b;
      case BinaryOp::BitAnd: return a & b;
      case BinaryOp::BitOr: return a | b;
      case BinaryOp::BitXor: return a ^ b;
      case BinaryOp::Lt: return a < b;
      case BinaryOp::Gt: return a > b;
      case BinaryOp::Le: return a <= b;
      case BinaryOp::Ge: return a >= b;
      case BinaryOp::Eq: return a == b;
      case BinaryOp::Ne: return a != b;
      case BinaryOp::LogAnd:
      case BinaryOp::LogOr: break;
    }
    return 0;
  }

  i64 eval(const Expr& e) {
    tick();
    switch (e.kind) {
      case ExprKind::IntLit:
      case ExprKind::CharLit:
      case ExprKind::BoolLit: return e.value;
      case ExprKind::FloatLit: unsupported("floating-point literal");
      case ExprKind::StringLit: unsupported("string literal");
      case ExprKind::Ident: return *slot(e.text);
      case ExprKind::Unary: {
        const Expr& x = e.operand();
        switch (e.unary_op) {
          case UnaryOp::Neg: return wrap(0 - static_cast<u64>(eval(x)));
          case UnaryOp::Not: return !eval(x);
          case UnaryOp::BitNot: return ~eval(x);
          case UnaryOp::PreInc:
          case UnaryOp::PreDec:
          case UnaryOp::PostInc:
          case UnaryOp::PostDec: {
            tick();
            i64* p = slot(x.text);
            i64 old = *p;
            bool inc = e.unary_op == UnaryOp::PreInc || e.unary_op == UnaryOp::PostInc;
            *p = wrap(static_cast<u64>(old) + (inc ? 1 : static_cast<u64>(-1)));
            bool post = e.unary_op == UnaryOp::PostInc || e.unary_op == UnaryOp::PostDec;
            return post ? old : *p;
          }
        }
        return 0;
      }
      case ExprKind::Binary: {
        if (e.binary_op == BinaryOp::LogAnd) return eval(e.lhs()) && eval(e.rhs());
        if (e.binary_op == BinaryOp::LogOr) return eval(e.lhs()) || eval(e.rhs());
        i64 a = eval(e.lhs());
        i64 b = eval(e.rhs());
        return arith(e.binary_op, a, b);
      }
      case ExprKind::Assign: {
        if (e.assign_op == AssignOp::Assign) {
          i64 v = eval(e.kids[0]);
          *slot(e.text) = v;
          return v;
        }
        // The target is read before the value is evaluated.
        i64 old = *slot(e.text);
        i64 v = eval(e.kids[0]);
        i64 r = arith(compound_operator(e.assign_op), old, v);
        *slot(e.text) = r;
        return r;
      }
      case ExprKind::Call: {
        const FunctionDef* f = lookup_function(e.text);
        check_arity(*f, e.kids.size());
        std::vector<i64> args;
        args.reserve(e.kids.size());
        for (const Expr& a : e.kids) args.push_back(eval(a));
        i64 saved = result_;
        i64 r = call(*f, std::move(args));
        result_ = saved;
        return r;
      }
      case ExprKind::Comma: {
        i64 v = 0;
        for (const Expr& k : e.kids) v = eval(k);
        return v;
      }
    }
    return 0;
  }

  const TranslationUnit& unit_;
  i64 fuel_;
  std::unordered_map<std::string, const FunctionDef*> functions_;
  Scope globals_;
  std::vector<std::vector<Scope>> frames_;
  i64 result_ = 0;
};

}  // namespace

Outcome evaluate(const TranslationUnit& unit, std::string_view entry, std::span<const std::int64_t> args,
                 std::int64_t fuel) {
  Machine m(unit, fuel);
  try {
    return Outcome::returned(m.start(entry, args));
  } catch (const TrapSignal& t) {
    return Outcome::trapped_with(t.kind);
  }
}

std::vector<std::vector<std::int64_t>> random_arguments(std::size_t arity, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 9);
  std::uniform_int_distribution<std::int64_t> small(-16, 16);
  std::uniform_int_distribution<std::int64_t> full(std::numeric_limits<std::int64_t>::min(),
                                                   std::numeric_limits<std::int64_t>::max());
  std::vector<std::vector<std::int64_t>> out;
  for (int t = 0; t < trials; ++t) {
    std::vector<std::int64_t> v(arity);
    for (auto& x : v) x = coin(rng) == 0 ? full(rng) : small(rng);
    out.push_back(std::move(v));
  }
  return out;
}

Verdict equivalent(const TranslationUnit& a, const TranslationUnit& b, std::string_view entry, int trials,
                   std::uint64_t seed, std::int64_t fuel) {
  const FunctionDef* fa = a.find_function(entry);
  const FunctionDef* fb = b.find_function(entry);
  if (!fa || !fb) throw EvalError("UnknownFunction", "no function named '" + std::string(entry) + "'");
  if (fa->params.size() != fb->params.size())
    throw EvalError("ArityMismatch", "'" + std::string(entry) + "' differs in arity");
  Verdict v;
  for (auto& args : random_arguments(fa->params.size(), trials, seed)) {
    Outcome oa = evaluate(a, entry, args, fuel);
    Outcome ob = evaluate(b, entry, args, fuel);
    if (!(oa == ob)) {
      v.equivalent = false;
      v.args = std::move(args);
      v.a = oa;
      v.b = ob;
      return v;
    }
  }
  return v;
}

}  // namespace canonc
