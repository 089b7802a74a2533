#include "canonc/normalizer.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "canonc/analysis.hpp"
#include "canonc/dependence.hpp"
#include "canonc/emitter.hpp"
#include "canonc/errors.hpp"
#include "canonc/lexer.hpp"

namespace canonc {

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::Loops: return "loops";
    case Rule::LogicalOps: return "logical-ops";
    case Rule::BitwiseOps: return "bitwise-ops";
    case Rule::RelationalOps: return "relational-ops";
    case Rule::SplitAssignments: return "split-assignments";
    case Rule::MergeAssignments: return "merge-assignments";
    case Rule::IfNegation: return "if-negation";
    case Rule::AssignmentOps: return "assignment-ops";
    case Rule::Distribute: return "distribute";
    case Rule::Declarations: return "declarations";
    case Rule::DoubleNegation: return "double-negation";
    case Rule::StatementOrder: return "statement-order";
    case Rule::Rename: return "rename";
    case Rule::OperandOrder: return "operand-order";
  }
  return "?";
}

namespace {

using Lowering = std::function<void(Stmt&&, std::vector<Stmt>&)>;

void rewrite_list(std::vector<Stmt>& list, const Lowering& f) {
  std::vector<Stmt> out;
  out.reserve(list.size());
  for (Stmt& s : list) f(std::move(s), out);
  list = std::move(out);
}

// Rewrites a single-statement position; several results become a block.
void rewrite_slot(Stmt& slot, const Lowering& f) {
  std::vector<Stmt> out;
  int line = slot.line;
  f(std::move(slot), out);
  if (out.size() == 1) {
    slot = std::move(out[0]);
  } else {
    slot = Stmt::block(std::move(out), line);
  }
}

// Applies `f` to every child statement position of `s`.
void rewrite_children(Stmt& s, const Lowering& f) {
  switch (s.kind) {
    case StmtKind::Block: rewrite_list(s.body, f); break;
    case StmtKind::If:
    case StmtKind::While:
    case StmtKind::DoWhile:
    case StmtKind::For:
      for (Stmt& c : s.body) rewrite_slot(c, f);
      break;
    case StmtKind::Switch:
      for (SwitchCase& arm : s.cases) rewrite_list(arm.body, f);
      break;
    default: break;
  }
}

struct Ctx {
  const NormalizeConfig& cfg;
  NormalizeStats& stats;
  std::set<std::string> globals;
  std::int64_t changes = 0;
  int temps = 0;

  Ctx(const NormalizeConfig& c, NormalizeStats& s) : cfg(c), stats(s) {}

  bool on(Rule r) const { return cfg.has(r); }
  void hit(Rule r) {
    ++stats.applied[static_cast<int>(r)];
    ++changes;
  }
};

std::set<std::string> global_names(const TranslationUnit& u) {
  std::set<std::string> out;
  for (const Stmt& g : u.globals)
    for (const Declarator& d : g.decls) out.insert(d.name);
  return out;
}

template <class F>
TranslationUnit each_function(const TranslationUnit& unit, F&& f) {
  TranslationUnit u = unit;
  for (FunctionDef& fn : u.functions) f(fn);
  return u;
}

Stmt assignment_stmt(const std::string& name, Expr value, int line) {
  Stmt s = Stmt::expression(Expr::assign(AssignOp::Assign, name, std::move(value)));
  s.line = line;
  return s;
}

Expr negate(Expr e) { return Expr::unary(UnaryOp::Not, std::move(e)); }

bool is_true_literal(const Expr& e) {
  return (e.is(ExprKind::BoolLit) || e.is(ExprKind::IntLit) || e.is(ExprKind::CharLit)) &&
         e.value != 0;
}

// ===========================================================================
// Declarations

void canon_type(TypeSpec& t, Ctx& c) {
  TypeSpec k = t.canonical();
  if (!(k == t)) {
    t = std::move(k);
    c.hit(Rule::Declarations);
  }
}

void declarations(Stmt&& s, std::vector<Stmt>& out, Ctx& c) {
  Lowering self = [&](Stmt&& x, std::vector<Stmt>& o) { declarations(std::move(x), o, c); };
  rewrite_children(s, self);

  if (s.is(StmtKind::Decl)) {
    canon_type(s.type, c);
    bool split = s.decls.size() > 1;
    for (const Declarator& d : s.decls) split = split || d.init.has_value();
    if (!split) {
      out.push_back(std::move(s));
      return;
    }
    c.hit(Rule::Declarations);
    std::vector<Stmt> inits;
    for (Declarator& d : s.decls) {
      out.push_back(Stmt::declaration(s.type, {Declarator{d.name, std::nullopt}}, s.line));
      if (d.init) inits.push_back(assignment_stmt(d.name, std::move(*d.init), s.line));
    }
    for (Stmt& i : inits) out.push_back(std::move(i));
    return;
  }

  if (s.is(StmtKind::For) && !s.init.empty() && s.init[0].is(StmtKind::Decl)) {
    c.hit(Rule::Declarations);
    Stmt decl = std::move(s.init[0]);
    s.init.clear();
    canon_type(decl.type, c);
    std::vector<Stmt> block;
    std::vector<Expr> inits;
    for (Declarator& d : decl.decls) {
      block.push_back(Stmt::declaration(decl.type, {Declarator{d.name, std::nullopt}}, decl.line));
      if (d.init) inits.push_back(Expr::assign(AssignOp::Assign, d.name, std::move(*d.init)));
    }
    if (inits.size() == 1) s.init.push_back(Stmt::expression(std::move(inits[0])));
    if (inits.size() > 1) s.init.push_back(Stmt::expression(Expr::comma(std::move(inits))));
    int line = s.line;
    block.push_back(std::move(s));
    out.push_back(Stmt::block(std::move(block), line));
    return;
  }
  out.push_back(std::move(s));
}

// ===========================================================================
// Loops and branches

// Replaces every `continue` bound to the loop being lowered with
// `prefix...; continue;`. Nested loops keep their own continues.
void patch_continues(std::vector<Stmt>& list, const std::vector<Stmt>& prefix);

void patch_continue_slot(Stmt& s, const std::vector<Stmt>& prefix) {
  switch (s.kind) {
    case StmtKind::Continue: {
      std::vector<Stmt> b = prefix;
      b.push_back(std::move(s));
      s = Stmt::block(std::move(b), s.line);
      break;
    }
    case StmtKind::Block: patch_continues(s.body, prefix); break;
    case StmtKind::If:
      for (Stmt& c : s.body) patch_continue_slot(c, prefix);
      break;
    case StmtKind::Switch:
      for (SwitchCase& arm : s.cases) patch_continues(arm.body, prefix);
      break;
    default: break;  // loops bind their own continues
  }
}

void patch_continues(std::vector<Stmt>& list, const std::vector<Stmt>& prefix) {
  std::vector<Stmt> out;
  for (Stmt& s : list) {
    if (s.is(StmtKind::Continue)) {
      for (const Stmt& p : prefix) out.push_back(p);
      out.push_back(std::move(s));
      continue;
    }
    patch_continue_slot(s, prefix);
    out.push_back(std::move(s));
  }
  list = std::move(out);
}

Stmt guard_break(const Expr& cond, int line) {
  std::vector<Stmt> brk;
  brk.push_back(Stmt::break_(line));
  Stmt g = Stmt::if_(negate(cond), Stmt::block(std::move(brk), line));
  g.line = line;
  return g;
}

// Statements of a loop body, spliced unless the body declares a name that
// `later` (code placed after the body in the same scope) refers to.
std::vector<Stmt> body_statements(Stmt&& body, const std::vector<const Expr*>& later) {
  if (!body.is(StmtKind::Block)) {
    std::vector<Stmt> one;
    one.push_back(std::move(body));
    return one;
  }
  std::set<std::string> declared;
  for (const Stmt& s : body.body)
    if (s.is(StmtKind::Decl))
      for (const Declarator& d : s.decls) declared.insert(d.name);
  bool clash = false;
  for (const Expr* e : later) {
    std::set<std::string> names;
    collect_reads(*e, names);
    collect_writes(*e, names);
    for (const std::string& n : names) clash = clash || declared.count(n);
  }
  if (clash) {
    std::vector<Stmt> one;
    one.push_back(std::move(body));
    return one;
  }
  return std::move(body.body);
}

void ensure_block(Stmt& s, Ctx& c) {
  if (s.is(StmtKind::Block)) return;
  int line = s.line;
  std::vector<Stmt> one;
  one.push_back(std::move(s));
  s = Stmt::block(std::move(one), line);
  c.hit(Rule::Loops);
}

bool falls_through(const std::vector<Stmt>& body) {
  if (body.empty()) return true;
  StmtKind k = body.back().kind;
  return k != StmtKind::Break && k != StmtKind::Return && k != StmtKind::Continue;
}

void lower_switch(Stmt&& s, std::vector<Stmt>& out, Ctx& c) {
  std::vector<SwitchCase>& arms = s.cases;
  const std::size_t n = arms.size();

  // Effective body of each arm: its own statements plus whatever it falls
  // into, without the terminating break.
  std::vector<std::vector<Stmt>> eff(n);
  for (std::size_t k = n; k-- > 0;) {
    eff[k] = arms[k].body;
    if (falls_through(arms[k].body) && k + 1 < n)
      for (const Stmt& x : eff[k + 1]) eff[k].push_back(x);
  }
  bool inner_break = false;
  bool any_continue = false;
  for (auto& body : eff) {
    if (!body.empty() && body.back().is(StmtKind::Break)) body.pop_back();
    Stmt wrapper = Stmt::block(body);
    inner_break = inner_break || has_free_break(wrapper);
    any_continue = any_continue || has_free_continue(wrapper);
  }
  if (inner_break && any_continue) {
    out.push_back(std::move(s));  // not expressible without goto
    return;
  }
  c.hit(Rule::Loops);

  Expr scrutinee = std::move(*s.expr);
  if (!is_pure(scrutinee)) {
    std::string tmp = "__t_sw" + std::to_string(c.temps++);
    out.push_back(Stmt::declaration(TypeSpec::of(BaseType::Long), {Declarator{tmp, std::nullopt}},
                                    s.line));
    out.push_back(assignment_stmt(tmp, std::move(scrutinee), s.line));
    scrutinee = Expr::ident(tmp, s.line);
  }

  struct Group {
    std::vector<Expr> labels;
    bool is_default = false;
    std::vector<Stmt> body;
    int line = 0;
  };
  std::vector<Group> groups;
  Group pending;
  for (std::size_t k = 0; k < n; ++k) {
    if (arms[k].label) {
      pending.labels.push_back(*arms[k].label);
    } else {
      pending.is_default = true;
    }
    if (arms[k].body.empty() && k + 1 < n) continue;
    pending.body = std::move(eff[k]);
    if (pending.body.size() == 1 && pending.body[0].is(StmtKind::Block)) {
      std::vector<Stmt> inner = std::move(pending.body[0].body);
      pending.body = std::move(inner);
    }
    pending.line = arms[k].line;
    groups.push_back(std::move(pending));
    pending = Group{};
  }

  std::optional<Stmt> chain;
  for (const Group& g : groups)
    if (g.is_default) chain = Stmt::block(g.body, g.line);
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    if (it->is_default) continue;
    std::optional<Expr> cond;
    for (const Expr& label : it->labels) {
      Expr test = Expr::binary(BinaryOp::Eq, scrutinee, label);
      cond = cond ? Expr::binary(BinaryOp::LogOr, std::move(*cond), std::move(test)) : test;
    }
    Stmt branch = Stmt::if_(std::move(*cond), Stmt::block(it->body, it->line), std::move(chain));
    branch.line = it->line;
    chain = std::move(branch);
  }
  if (!chain) {
    if (!is_pure(scrutinee)) out.push_back(Stmt::expression(std::move(scrutinee)));
    return;
  }
  if (inner_break) {
    std::vector<Stmt> loop;
    loop.push_back(std::move(*chain));
    loop.push_back(Stmt::break_(s.line));
    Stmt w = Stmt::while_(Expr::bool_lit(true, s.line), Stmt::block(std::move(loop), s.line));
    w.line = s.line;
    out.push_back(std::move(w));
    return;
  }
  out.push_back(std::move(*chain));
}

void control(Stmt&& s, std::vector<Stmt>& out, Ctx& c) {
  Lowering self = [&](Stmt&& x, std::vector<Stmt>& o) { control(std::move(x), o, c); };
  rewrite_children(s, self);
  const bool loops = c.on(Rule::Loops);

  switch (s.kind) {
    case StmtKind::If: {
      if (c.on(Rule::IfNegation)) {
        while (s.has_else() && s.expr->is_unary(UnaryOp::Not)) {
          Expr inner = std::move(s.expr->kids[0]);
          s.expr = std::move(inner);
          std::swap(s.body[0], s.body[1]);
          c.hit(Rule::IfNegation);
        }
      }
      if (loops) {
        ensure_block(s.then_branch(), c);
        if (s.has_else()) {
          Stmt& e = s.else_branch();
          if (e.is(StmtKind::Block) && e.body.size() == 1 && e.body[0].is(StmtKind::If)) {
            Stmt inner = std::move(e.body[0]);
            e = std::move(inner);
            c.hit(Rule::Loops);
          } else if (!e.is(StmtKind::If)) {
            ensure_block(e, c);
          }
        }
      }
      out.push_back(std::move(s));
      return;
    }
    case StmtKind::While: {
      if (!loops) break;
      if (s.expr->is(ExprKind::BoolLit) && s.expr->value == 1) {
        ensure_block(s.loop_body(), c);
        break;
      }
      c.hit(Rule::Loops);
      std::vector<Stmt> body;
      if (!is_true_literal(*s.expr)) body.push_back(guard_break(*s.expr, s.line));
      for (Stmt& x : body_statements(std::move(s.loop_body()), {})) body.push_back(std::move(x));
      Stmt w = Stmt::while_(Expr::bool_lit(true, s.line), Stmt::block(std::move(body), s.line));
      w.line = s.line;
      out.push_back(std::move(w));
      return;
    }
    case StmtKind::DoWhile: {
      if (!loops) break;
      c.hit(Rule::Loops);
      const Expr& cond = *s.expr;
      std::vector<Stmt> body = body_statements(std::move(s.loop_body()), {&cond});
      if (!is_true_literal(cond)) {
        patch_continues(body, {guard_break(cond, s.line)});
        body.push_back(guard_break(cond, s.line));
      }
      Stmt w = Stmt::while_(Expr::bool_lit(true, s.line), Stmt::block(std::move(body), s.line));
      w.line = s.line;
      out.push_back(std::move(w));
      return;
    }
    case StmtKind::For: {
      if (!loops) break;
      c.hit(Rule::Loops);
      if (!s.init.empty()) out.push_back(std::move(s.init[0]));
      std::vector<Stmt> body;
      if (s.expr && !is_true_literal(*s.expr)) body.push_back(guard_break(*s.expr, s.line));
      std::vector<const Expr*> later;
      if (s.step) later.push_back(&*s.step);
      for (Stmt& x : body_statements(std::move(s.loop_body()), later)) body.push_back(std::move(x));
      if (s.step) {
        Stmt step = Stmt::expression(*s.step);
        step.line = s.line;
        std::size_t guard = body.size() && s.expr && !is_true_literal(*s.expr) ? 1 : 0;
        std::vector<Stmt> rest(std::make_move_iterator(body.begin() + guard),
                               std::make_move_iterator(body.end()));
        body.resize(guard);
        patch_continues(rest, {step});
        for (Stmt& x : rest) body.push_back(std::move(x));
        body.push_back(std::move(step));
      }
      Stmt w = Stmt::while_(Expr::bool_lit(true, s.line), Stmt::block(std::move(body), s.line));
      w.line = s.line;
      out.push_back(std::move(w));
      return;
    }
    case StmtKind::Switch:
      if (!loops) break;
      lower_switch(std::move(s), out, c);
      return;
    default: break;
  }
  out.push_back(std::move(s));
}

// ===========================================================================
// Expressions

enum class Use { Value, Discard, Boolean };

bool is_boolean_valued(const Expr& e) {
  if (e.is(ExprKind::BoolLit)) return true;
  if (e.is_unary(UnaryOp::Not)) return true;
  if (!e.is(ExprKind::Binary)) return false;
  switch (e.binary_op) {
    case BinaryOp::Lt:
    case BinaryOp::Gt:
    case BinaryOp::Le:
    case BinaryOp::Ge:
    case BinaryOp::Eq:
    case BinaryOp::Ne:
    case BinaryOp::LogAnd:
    case BinaryOp::LogOr: return true;
    default: return false;
  }
}

bool is_additive(const Expr& e) {
  return e.is_binary(BinaryOp::Add) || e.is_binary(BinaryOp::Sub);
}

bool all_products(const Expr& e) {
  if (is_additive(e)) return all_products(e.lhs()) && all_products(e.rhs());
  return e.is_binary(BinaryOp::Mul);
}

// Operands may trade evaluation order when neither has side effects.
bool swappable(const Expr& a, const Expr& b) { return is_pure(a) && is_pure(b); }

void blank_names(Expr& e) {
  if (e.is(ExprKind::Ident) || e.is(ExprKind::Assign) || e.is(ExprKind::Call)) e.text = "ID";
  for (Expr& k : e.kids) blank_names(k);
}

// Name-independent ordering key for operands.
std::string shape_key(const Expr& e) {
  Expr c = e;
  blank_names(c);
  return emit(c);
}

struct Term {
  Expr e;
  bool negative = false;
  std::string key;
};

void flatten_sum(const Expr& e, bool negative, std::vector<Term>& out) {
  if (is_additive(e)) {
    flatten_sum(e.lhs(), negative, out);
    flatten_sum(e.rhs(), e.binary_op == BinaryOp::Sub ? !negative : negative, out);
    return;
  }
  out.push_back({e, negative, shape_key(e)});
}

void flatten_product(const Expr& e, std::vector<Term>& out) {
  if (e.is_binary(BinaryOp::Mul)) {
    flatten_product(e.lhs(), out);
    flatten_product(e.rhs(), out);
    return;
  }
  out.push_back({e, false, shape_key(e)});
}

// Rebuilds a sum or product from sorted terms; nullopt when that is `e`.
std::optional<Expr> sorted_chain(const Expr& e, std::vector<Term> terms, bool sum) {
  for (const Term& t : terms)
    if (!is_pure(t.e)) return std::nullopt;
  std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    if (a.negative != b.negative) return !a.negative;
    return a.key < b.key;
  });
  Expr acc = std::move(terms[0].e);
  for (std::size_t i = 1; i < terms.size(); ++i) {
    BinaryOp op = !sum ? BinaryOp::Mul : terms[i].negative ? BinaryOp::Sub : BinaryOp::Add;
    acc = Expr::binary(op, std::move(acc), std::move(terms[i].e));
  }
  if (acc == e) return std::nullopt;
  return acc;
}

// !(B < A) && !(A == B)  ->  A < B
std::optional<Expr> trichotomy(const Expr& p, const Expr& q) {
  if (!p.is_unary(UnaryOp::Not) || !q.is_unary(UnaryOp::Not)) return std::nullopt;
  const Expr& lt = p.operand();
  const Expr& eq = q.operand();
  if (!lt.is_binary(BinaryOp::Lt) || !eq.is_binary(BinaryOp::Eq)) return std::nullopt;
  const Expr& b = lt.lhs();
  const Expr& a = lt.rhs();
  bool match = (eq.lhs() == a && eq.rhs() == b) || (eq.lhs() == b && eq.rhs() == a);
  if (!match) return std::nullopt;
  return Expr::binary(BinaryOp::Lt, a, b);
}

// Y, Z of a normalized disjunction !(!Y && !Z).
const Expr* disjunction(const Expr& e) {
  if (!e.is_unary(UnaryOp::Not)) return nullptr;
  const Expr& c = e.operand();
  if (!c.is_binary(BinaryOp::LogAnd) || !c.lhs().is_unary(UnaryOp::Not) ||
      !c.rhs().is_unary(UnaryOp::Not))
    return nullptr;
  return &c;
}

std::optional<Expr> local_rule(Expr& e, Ctx& c, Use use) {
  switch (e.kind) {
    case ExprKind::Assign:
      if (c.on(Rule::AssignmentOps) && e.assign_op != AssignOp::Assign) {
        c.hit(Rule::AssignmentOps);
        BinaryOp op = compound_operator(e.assign_op);
        return Expr::assign(AssignOp::Assign, e.text,
                            Expr::binary(op, Expr::ident(e.text, e.line), std::move(e.kids[0])));
      }
      return std::nullopt;

    case ExprKind::Unary: {
      UnaryOp op = e.unary_op;
      bool inc = op == UnaryOp::PreInc || op == UnaryOp::PostInc;
      bool step = inc || op == UnaryOp::PreDec || op == UnaryOp::PostDec;
      if (step && c.on(Rule::AssignmentOps)) {
        c.hit(Rule::AssignmentOps);
        const std::string name = e.operand().text;
        int line = e.line;
        Expr update = Expr::assign(
            AssignOp::Assign, name,
            Expr::binary(inc ? BinaryOp::Add : BinaryOp::Sub, Expr::ident(name, line),
                         Expr::int_lit(1, line)));
        bool post = op == UnaryOp::PostInc || op == UnaryOp::PostDec;
        if (!post || use == Use::Discard) return update;
        // Old value of a post-increment: (x = x + 1) - 1.
        return Expr::binary(inc ? BinaryOp::Sub : BinaryOp::Add, std::move(update),
                            Expr::int_lit(1, line));
      }
      if (op == UnaryOp::Not && c.on(Rule::DoubleNegation) && e.operand().is_unary(UnaryOp::Not)) {
        const Expr& inner = e.operand().operand();
        if (use == Use::Boolean || is_boolean_valued(inner)) {
          c.hit(Rule::DoubleNegation);
          Expr out = inner;
          return out;
        }
      }
      return std::nullopt;
    }

    case ExprKind::Binary: {
      Expr& x = e.kids[0];
      Expr& y = e.kids[1];
      switch (e.binary_op) {
        case BinaryOp::LogAnd: {
          if (!is_pure(x) || !is_pure(y)) break;
          if (c.on(Rule::RelationalOps)) {
            auto r = trichotomy(x, y);
            if (!r) r = trichotomy(y, x);
            if (r) {
              c.hit(Rule::RelationalOps);
              return r;
            }
          }
          if (!c.on(Rule::Distribute) || !c.on(Rule::LogicalOps)) break;
          auto conj = [](Expr a, Expr b) {
            return negate(Expr::binary(BinaryOp::LogAnd, std::move(a), std::move(b)));
          };
          if (const Expr* d = disjunction(y)) {
            c.hit(Rule::Distribute);
            return negate(Expr::binary(BinaryOp::LogAnd, conj(x, d->lhs().operand()),
                                       conj(x, d->rhs().operand())));
          }
          if (const Expr* d = disjunction(x)) {
            c.hit(Rule::Distribute);
            return negate(Expr::binary(BinaryOp::LogAnd, conj(d->lhs().operand(), y),
                                       conj(d->rhs().operand(), y)));
          }
          break;
        }
        case BinaryOp::LogOr:
          if (!c.on(Rule::LogicalOps)) break;
          c.hit(Rule::LogicalOps);
          return negate(Expr::binary(BinaryOp::LogAnd, negate(std::move(x)), negate(std::move(y))));
        case BinaryOp::BitOr:
          if (!c.on(Rule::BitwiseOps)) break;
          c.hit(Rule::BitwiseOps);
          return Expr::unary(UnaryOp::BitNot,
                             Expr::binary(BinaryOp::BitAnd, Expr::unary(UnaryOp::BitNot, std::move(x)),
                                          Expr::unary(UnaryOp::BitNot, std::move(y))));
        case BinaryOp::BitXor: {
          if (!c.on(Rule::BitwiseOps) || !is_pure(x) || !is_pure(y)) break;
          c.hit(Rule::BitwiseOps);
          auto bnot = [](Expr v) { return Expr::unary(UnaryOp::BitNot, std::move(v)); };
          Expr left = bnot(Expr::binary(BinaryOp::BitAnd, bnot(x), y));
          Expr right = bnot(Expr::binary(BinaryOp::BitAnd, x, bnot(y)));
          return bnot(Expr::binary(BinaryOp::BitAnd, std::move(left), std::move(right)));
        }
        case BinaryOp::Gt:
          if (!c.on(Rule::RelationalOps) || !swappable(x, y)) break;
          c.hit(Rule::RelationalOps);
          return Expr::binary(BinaryOp::Lt, std::move(y), std::move(x));
        case BinaryOp::Le:
          if (!c.on(Rule::RelationalOps)) break;
          if (is_pure(x) && is_pure(y)) {
            c.hit(Rule::RelationalOps);
            return Expr::binary(BinaryOp::LogOr, Expr::binary(BinaryOp::Lt, x, y),
                                Expr::binary(BinaryOp::Eq, x, y));
          }
          break;
        case BinaryOp::Ge:
          if (!c.on(Rule::RelationalOps)) break;
          c.hit(Rule::RelationalOps);
          if (is_pure(x) && is_pure(y))
            return Expr::binary(BinaryOp::LogOr, Expr::binary(BinaryOp::Lt, y, x),
                                Expr::binary(BinaryOp::Eq, x, y));
          return negate(Expr::binary(BinaryOp::Lt, std::move(x), std::move(y)));
        case BinaryOp::Ne:
          if (!c.on(Rule::RelationalOps)) break;
          c.hit(Rule::RelationalOps);
          return negate(Expr::binary(BinaryOp::Eq, std::move(x), std::move(y)));
        case BinaryOp::Mul: {
          bool distribute = c.on(Rule::Distribute) && is_pure(x) && is_pure(y);
          if (distribute && is_additive(y)) {
            c.hit(Rule::Distribute);
            return Expr::binary(y.binary_op, Expr::binary(BinaryOp::Mul, x, y.lhs()),
                                Expr::binary(BinaryOp::Mul, x, y.rhs()));
          }
          if (distribute && is_additive(x)) {
            c.hit(Rule::Distribute);
            return Expr::binary(x.binary_op, Expr::binary(BinaryOp::Mul, x.lhs(), y),
                                Expr::binary(BinaryOp::Mul, x.rhs(), y));
          }
          if (c.on(Rule::OperandOrder)) {
            std::vector<Term> terms;
            flatten_product(e, terms);
            if (auto r = sorted_chain(e, std::move(terms), false)) {
              c.hit(Rule::OperandOrder);
              return r;
            }
          }
          break;
        }
        case BinaryOp::Add:
        case BinaryOp::Sub: {
          if (!c.on(Rule::OperandOrder)) break;
          std::vector<Term> terms;
          flatten_sum(e, false, terms);
          if (auto r = sorted_chain(e, std::move(terms), true)) {
            c.hit(Rule::OperandOrder);
            return r;
          }
          break;
        }
        case BinaryOp::Eq:
          if (c.on(Rule::OperandOrder) && swappable(x, y) && shape_key(y) < shape_key(x)) {
            c.hit(Rule::OperandOrder);
            return Expr::binary(BinaryOp::Eq, std::move(y), std::move(x));
          }
          break;
        case BinaryOp::Div:
          if (!c.on(Rule::Distribute) || !is_pure(x) || !is_pure(y)) break;
          if (is_additive(x) && all_products(x)) {
            c.hit(Rule::Distribute);
            ++c.stats.division_distributions;
            return Expr::binary(x.binary_op, Expr::binary(BinaryOp::Div, x.lhs(), y),
                                Expr::binary(BinaryOp::Div, x.rhs(), y));
          }
          break;
        default: break;
      }
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

Expr rewrite_expr(Expr e, Ctx& c, Use use) {
  switch (e.kind) {
    case ExprKind::Unary:
      e.kids[0] = rewrite_expr(std::move(e.kids[0]), c,
                               e.unary_op == UnaryOp::Not ? Use::Boolean : Use::Value);
      break;
    case ExprKind::Binary: {
      bool logical = e.binary_op == BinaryOp::LogAnd || e.binary_op == BinaryOp::LogOr;
      for (Expr& k : e.kids) k = rewrite_expr(std::move(k), c, logical ? Use::Boolean : Use::Value);
      break;
    }
    case ExprKind::Comma:
      for (std::size_t i = 0; i < e.kids.size(); ++i)
        e.kids[i] = rewrite_expr(std::move(e.kids[i]), c, i + 1 < e.kids.size() ? Use::Discard : use);
      break;
    default:
      for (Expr& k : e.kids) k = rewrite_expr(std::move(k), c, Use::Value);
      break;
  }
  if (auto r = local_rule(e, c, use)) return rewrite_expr(std::move(*r), c, use);
  return e;
}

void expressions(Stmt& s, Ctx& c) {
  auto rw = [&](std::optional<Expr>& slot, Use use) {
    if (slot) slot = rewrite_expr(std::move(*slot), c, use);
  };
  switch (s.kind) {
    case StmtKind::Expr: rw(s.expr, Use::Discard); break;
    case StmtKind::Decl:
      for (Declarator& d : s.decls) rw(d.init, Use::Value);
      break;
    case StmtKind::If:
    case StmtKind::While:
    case StmtKind::DoWhile: rw(s.expr, Use::Boolean); break;
    case StmtKind::For:
      rw(s.expr, Use::Boolean);
      rw(s.step, Use::Discard);
      break;
    case StmtKind::Switch:
    case StmtKind::Return: rw(s.expr, Use::Value); break;
    default: break;
  }
  for (Stmt& i : s.init) expressions(i, c);
  for (Stmt& b : s.body) expressions(b, c);
  for (SwitchCase& arm : s.cases)
    for (Stmt& b : arm.body) expressions(b, c);
}

// ===========================================================================
// Statement restructuring

// Moves nested assignments and comma prefixes out of an expression into
// statements placed before it, in evaluation order, when nothing evaluated
// earlier in place could observe the move.
class Hoister {
 public:
  Hoister(Ctx& c, std::vector<Stmt>& pre, int line) : c_(c), pre_(pre), line_(line) {}

  void root(Expr& e) {
    if (e.is(ExprKind::Comma)) {
      visit(e, true);
      return;
    }
    if (e.is(ExprKind::Assign)) {
      if (e.assign_op != AssignOp::Assign) reads_.insert(e.text);
      visit(e.kids[0], true);
      return;
    }
    visit(e, true);
  }

 private:
  bool movable(const Expr& moved, const std::set<std::string>& before) const {
    std::set<std::string> w;
    collect_writes(moved, w);
    for (const std::string& n : w)
      if (before.count(n)) return false;
    if (contains_call(moved))
      for (const std::string& n : before)
        if (c_.globals.count(n)) return false;
    return true;
  }

  void visit(Expr& e, bool can_hoist) {
    switch (e.kind) {
      case ExprKind::Ident: reads_.insert(e.text); return;
      case ExprKind::Assign: {
        auto before = reads_;
        bool blocked_before = blocked_;
        if (e.assign_op != AssignOp::Assign) reads_.insert(e.text);
        visit(e.kids[0], can_hoist);
        if (can_hoist && !blocked_before && movable(e, before)) {
          c_.hit(Rule::SplitAssignments);
          std::string target = e.text;
          Stmt s = Stmt::expression(std::move(e));
          s.line = line_;
          pre_.push_back(std::move(s));
          e = Expr::ident(target, line_);
          reads_ = std::move(before);
          reads_.insert(target);
          blocked_ = blocked_before;
        } else {
          reads_.insert(e.text);
          blocked_ = true;
        }
        return;
      }
      case ExprKind::Unary:
        visit(e.kids[0], can_hoist);
        if (e.unary_op != UnaryOp::Neg && e.unary_op != UnaryOp::Not &&
            e.unary_op != UnaryOp::BitNot)
          blocked_ = true;
        return;
      case ExprKind::Call:
        for (Expr& a : e.kids) visit(a, can_hoist);
        blocked_ = true;
        return;
      case ExprKind::Binary:
        visit(e.kids[0], can_hoist);
        visit(e.kids[1], can_hoist && e.binary_op != BinaryOp::LogAnd &&
                             e.binary_op != BinaryOp::LogOr);
        return;
      case ExprKind::Comma: {
        std::vector<Expr> kept;
        for (std::size_t i = 0; i + 1 < e.kids.size(); ++i) {
          Expr& part = e.kids[i];
          auto before = reads_;
          bool blocked_before = blocked_;
          visit(part, can_hoist);
          if (can_hoist && !blocked_before && movable(part, before)) {
            c_.hit(Rule::SplitAssignments);
            if (!is_pure(part)) {
              Stmt s = Stmt::expression(std::move(part));
              s.line = line_;
              pre_.push_back(std::move(s));
            }
            reads_ = std::move(before);
            blocked_ = blocked_before;
          } else {
            kept.push_back(std::move(part));
          }
        }
        visit(e.kids.back(), can_hoist);
        if (kept.empty()) {
          Expr last = std::move(e.kids.back());
          e = std::move(last);
        } else {
          kept.push_back(std::move(e.kids.back()));
          e.kids = std::move(kept);
        }
        return;
      }
      default:
        for (Expr& k : e.kids) visit(k, can_hoist);
        return;
    }
  }

  Ctx& c_;
  std::vector<Stmt>& pre_;
  int line_;
  std::set<std::string> reads_;
  bool blocked_ = false;
};

void split(Stmt&& s, std::vector<Stmt>& out, Ctx& c) {
  if (s.is(StmtKind::Expr) && s.expr->is(ExprKind::Comma)) {
    c.hit(Rule::SplitAssignments);
    for (Expr& part : s.expr->kids) {
      Stmt p = Stmt::expression(std::move(part));
      p.line = s.line;
      split(std::move(p), out, c);
    }
    return;
  }
  bool hoistable = s.is(StmtKind::Expr) || s.is(StmtKind::Return) || s.is(StmtKind::If) ||
                   s.is(StmtKind::Switch);
  if (hoistable && s.expr) {
    std::vector<Stmt> pre;
    Hoister(c, pre, s.line).root(*s.expr);
    for (Stmt& p : pre) split(std::move(p), out, c);
  }
  out.push_back(std::move(s));
}

// `v = v op e` for a compound `v op= e`; plain assignments unchanged.
Expr expanded_value(const Expr& assign) {
  if (assign.assign_op == AssignOp::Assign) return assign.kids[0];
  return Expr::binary(compound_operator(assign.assign_op), Expr::ident(assign.text, assign.line),
                      assign.kids[0]);
}

void substitute(Expr& e, const std::string& name, const Expr& value) {
  if (e.is(ExprKind::Ident) && e.text == name) {
    e = value;
    return;
  }
  for (Expr& k : e.kids) substitute(k, name, value);
}

bool reads_global(const Expr& e, const std::set<std::string>& globals) {
  std::set<std::string> r;
  collect_reads(e, r);
  for (const std::string& n : r)
    if (globals.count(n)) return true;
  return false;
}

void merge(std::vector<Stmt>& list, Ctx& c) {
  auto plain_assign = [](const Stmt& s) {
    return s.is(StmtKind::Expr) && s.expr->is(ExprKind::Assign);
  };
  std::size_t i = 0;
  while (i + 1 < list.size()) {
    Stmt& a = list[i];
    Stmt& b = list[i + 1];
    if (plain_assign(a) && plain_assign(b) && a.expr->assign_op == AssignOp::Assign &&
        a.expr->text == b.expr->text && !contains_assignment(a.expr->kids[0])) {
      const std::string& v = a.expr->text;
      const Expr& first = a.expr->kids[0];
      Expr second = expanded_value(*b.expr);
      int mentions = count_mentions(second, v);
      bool once = mentions == 1 && !contains_assignment(second);
      bool safe = is_pure(first) ||
                  (is_pure(second) && !reads_global(second, c.globals));
      // a small pure value may be copied into a pure use twice
      bool twice = mentions == 2 && is_pure(first) && is_pure(second) && operator_count(first) <= 4;
      if ((once && safe) || twice) {
        substitute(second, v, first);
        Stmt merged = Stmt::expression(Expr::assign(AssignOp::Assign, v, std::move(second)));
        merged.line = a.line;
        list[i] = std::move(merged);
        list.erase(list.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        c.hit(Rule::MergeAssignments);
        continue;
      }
    }
    ++i;
  }
}

void restructure(Stmt&& s, std::vector<Stmt>& out, Ctx& c) {
  Lowering self = [&](Stmt&& x, std::vector<Stmt>& o) { restructure(std::move(x), o, c); };
  rewrite_children(s, self);
  if (c.on(Rule::MergeAssignments)) {
    if (s.is(StmtKind::Block)) merge(s.body, c);
    for (SwitchCase& arm : s.cases) merge(arm.body, c);
  }
  if (c.on(Rule::SplitAssignments)) {
    split(std::move(s), out, c);
    return;
  }
  out.push_back(std::move(s));
}

// ===========================================================================
// Statement order and renaming

struct OrderInfo {
  std::string key;
  std::vector<std::string> names;  // identifiers in emission order
};

OrderInfo order_info(const Stmt& stmt) {
  OrderInfo info;
  for (const Token& t : tokenize(emit(stmt))) {
    if (!info.key.empty()) info.key += ' ';
    if (t.kind == TokenKind::Identifier) {
      info.key += "ID";
      info.names.push_back(t.lexeme);
    } else {
      info.key += t.lexeme;
    }
  }
  return info;
}

bool bare_decl(const Stmt& s) {
  return s.is(StmtKind::Decl) &&
         std::none_of(s.decls.begin(), s.decls.end(), [](const Declarator& d) { return d.init.has_value(); });
}

std::vector<std::size_t> dependence_order(std::span<const Stmt> list, std::span<const OrderInfo> info,
                                          const std::set<std::string>& globals) {
  std::vector<std::string> keys;
  keys.reserve(info.size());
  for (const OrderInfo& i : info) keys.push_back(i.key);
  return order_topologically(build_dependence_graph(list, globals), keys);
}

// Bare declarations leave the dependence sort and are put back just before
// the first statement using them, so declaration order (and with it the
// positional names) follows the sorted statements.
std::optional<std::vector<std::size_t>> order_with_floating_decls(std::vector<Stmt>& list,
                                                                  const std::vector<OrderInfo>& info,
                                                                  const std::set<std::string>& globals) {
  std::vector<std::size_t> decls, rest;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (bare_decl(list[i])) {
      for (const Declarator& d : list[i].decls)
        if (seen.count(d.name)) return std::nullopt;  // an earlier statement means an outer variable
      decls.push_back(i);
    } else {
      rest.push_back(i);
    }
    seen.insert(info[i].names.begin(), info[i].names.end());
  }
  if (decls.empty()) return std::nullopt;

  std::vector<Stmt> rest_stmts;
  std::vector<OrderInfo> rest_info;
  rest_stmts.reserve(rest.size());
  for (std::size_t i : rest) {
    rest_stmts.push_back(std::move(list[i]));
    rest_info.push_back(info[i]);
  }
  std::vector<std::size_t> sorted;
  for (std::size_t k : dependence_order(rest_stmts, rest_info, globals)) sorted.push_back(rest[k]);
  for (std::size_t k = 0; k < rest.size(); ++k) list[rest[k]] = std::move(rest_stmts[k]);

  struct Slot {
    std::size_t before;
    long occurrence;
    const std::string* key;
    std::size_t index;
  };
  std::vector<Slot> slots;
  for (std::size_t d : decls) {
    Slot slot{0, -1, &info[d].key, d};
    bool found = false;
    for (std::size_t p = 0; p < sorted.size() && !found; ++p) {
      const auto& names = info[sorted[p]].names;
      for (std::size_t n = 0; n < names.size() && !found; ++n)
        for (const Declarator& decl : list[d].decls)
          if (names[n] == decl.name) {
            slot = {p, static_cast<long>(n), &info[d].key, d};
            found = true;
            break;
          }
    }
    slots.push_back(slot);
  }
  std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
    if (a.before != b.before) return a.before < b.before;
    if (a.occurrence != b.occurrence) return a.occurrence < b.occurrence;
    if (*a.key != *b.key) return *a.key < *b.key;
    return a.index < b.index;
  });

  std::vector<std::size_t> perm;
  perm.reserve(list.size());
  std::size_t next = 0;
  for (std::size_t p = 0; p < sorted.size(); ++p) {
    while (next < slots.size() && slots[next].before == p) perm.push_back(slots[next++].index);
    perm.push_back(sorted[p]);
  }
  while (next < slots.size()) perm.push_back(slots[next++].index);
  return perm;
}

void order_blocks(Stmt& body, const std::set<std::string>& globals, Ctx& c) {
  for_each_block(body, [&](std::vector<Stmt>& list) {
    if (list.size() < 2) return;
    std::vector<OrderInfo> info;
    info.reserve(list.size());
    for (const Stmt& s : list) info.push_back(order_info(s));
    std::vector<std::size_t> perm;
    if (auto floated = order_with_floating_decls(list, info, globals)) {
      perm = std::move(*floated);
    } else {
      perm = dependence_order(list, info, globals);
    }
    bool moved = false;
    std::vector<Stmt> out;
    out.reserve(list.size());
    for (std::size_t k = 0; k < perm.size(); ++k) {
      moved = moved || perm[k] != k;
      out.push_back(std::move(list[perm[k]]));
    }
    list = std::move(out);
    if (moved) c.hit(Rule::StatementOrder);
  });
}

class Renamer {
 public:
  Renamer(Ctx& c, std::map<std::string, std::string> globals) : c_(c) {
    scopes_.push_back(std::move(globals));
  }

  void function(FunctionDef& f) {
    scopes_.emplace_back();
    for (std::size_t i = 0; i < f.params.size(); ++i)
      f.params[i].name = bind(f.params[i].name, "p" + std::to_string(i));
    next_local_ = 0;
    for (Stmt& s : f.body.body) stmt(s);
    scopes_.pop_back();
  }

  void expr(Expr& e) {
    if (e.is(ExprKind::Ident) || e.is(ExprKind::Assign)) e.text = lookup(e.text);
    for (Expr& k : e.kids) expr(k);
  }

  std::string bind(const std::string& old, std::string fresh) {
    if (old != fresh) c_.hit(Rule::Rename);
    scopes_.back()[old] = fresh;
    return fresh;
  }

 private:
  std::string lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return f->second;
    }
    return name;
  }

  void scoped(Stmt& s) {
    scopes_.emplace_back();
    stmt(s);
    scopes_.pop_back();
  }

  void stmt(Stmt& s) {
    auto ex = [&](std::optional<Expr>& e) {
      if (e) expr(*e);
    };
    switch (s.kind) {
      case StmtKind::Decl:
        for (Declarator& d : s.decls) {
          if (d.init) expr(*d.init);
          d.name = bind(d.name, "v" + std::to_string(next_local_++));
        }
        break;
      case StmtKind::Block:
        scopes_.emplace_back();
        for (Stmt& c : s.body) stmt(c);
        scopes_.pop_back();
        break;
      case StmtKind::For:
        scopes_.emplace_back();
        for (Stmt& i : s.init) stmt(i);
        ex(s.expr);
        ex(s.step);
        scoped(s.loop_body());
        scopes_.pop_back();
        break;
      case StmtKind::Switch:
        ex(s.expr);
        scopes_.emplace_back();
        for (SwitchCase& arm : s.cases)
          for (Stmt& c : arm.body) stmt(c);
        scopes_.pop_back();
        break;
      default:
        ex(s.expr);
        for (Stmt& c : s.body) scoped(c);
        break;
    }
  }

  Ctx& c_;
  std::vector<std::map<std::string, std::string>> scopes_;
  int next_local_ = 0;
};

// ===========================================================================
// Pass drivers

TranslationUnit run_declarations(const TranslationUnit& unit, Ctx& c) {
  TranslationUnit u = unit;
  for (Stmt& g : u.globals) canon_type(g.type, c);
  std::vector<Stmt> globals;
  for (Stmt& g : u.globals) {
    if (g.decls.size() > 1) c.hit(Rule::Declarations);
    for (Declarator& d : g.decls) globals.push_back(Stmt::declaration(g.type, {d}, g.line));
  }
  u.globals = std::move(globals);
  for (FunctionDef& f : u.functions) {
    canon_type(f.return_type, c);
    for (Param& p : f.params) canon_type(p.type, c);
    Lowering self = [&](Stmt&& x, std::vector<Stmt>& o) { declarations(std::move(x), o, c); };
    rewrite_list(f.body.body, self);
  }
  return u;
}

void control_function(FunctionDef& f, Ctx& c) {
  Lowering self = [&](Stmt&& x, std::vector<Stmt>& o) { control(std::move(x), o, c); };
  rewrite_list(f.body.body, self);
}

void restructure_function(FunctionDef& f, Ctx& c) {
  Lowering self = [&](Stmt&& x, std::vector<Stmt>& o) { restructure(std::move(x), o, c); };
  rewrite_list(f.body.body, self);
  if (c.on(Rule::MergeAssignments)) merge(f.body.body, c);
}

TranslationUnit run_control(const TranslationUnit& unit, Ctx& c) {
  return each_function(unit, [&](FunctionDef& f) { control_function(f, c); });
}

TranslationUnit run_expressions(const TranslationUnit& unit, Ctx& c) {
  TranslationUnit u = unit;
  for (Stmt& g : u.globals) expressions(g, c);
  for (FunctionDef& f : u.functions) expressions(f.body, c);
  return u;
}

TranslationUnit run_restructure(const TranslationUnit& unit, Ctx& c) {
  c.globals = global_names(unit);
  return each_function(unit, [&](FunctionDef& f) { restructure_function(f, c); });
}

TranslationUnit run_order(const TranslationUnit& unit, Ctx& c) {
  std::set<std::string> globals = global_names(unit);
  return each_function(unit, [&](FunctionDef& f) { order_blocks(f.body, globals, c); });
}

TranslationUnit run_rename(const TranslationUnit& unit, Ctx& c) {
  TranslationUnit u = unit;
  std::map<std::string, std::string> globals;
  Renamer top(c, {});
  int n = 0;
  for (Stmt& g : u.globals) {
    for (Declarator& d : g.decls) {
      if (d.init) top.expr(*d.init);
      std::string fresh = "g" + std::to_string(n++);
      top.bind(d.name, fresh);
      globals[d.name] = fresh;
      d.name = fresh;
    }
  }
  for (FunctionDef& f : u.functions) Renamer(c, globals).function(f);
  return u;
}

NormalizeStats& sink(NormalizeStats* stats, NormalizeStats& local) {
  return stats ? *stats : local;
}

}  // namespace

std::string statement_sort_key(const Stmt& stmt) { return order_info(stmt).key; }

TranslationUnit canonicalize_declarations(const TranslationUnit& unit, NormalizeStats* stats) {
  NormalizeStats local;
  NormalizeConfig cfg;
  Ctx c(cfg, sink(stats, local));
  return run_declarations(unit, c);
}

TranslationUnit normalize_loops_and_branches(const TranslationUnit& unit,
                                             const NormalizeConfig& config,
                                             NormalizeStats* stats) {
  NormalizeStats local;
  Ctx c(config, sink(stats, local));
  return run_control(unit, c);
}

TranslationUnit normalize_expressions(const TranslationUnit& unit, const NormalizeConfig& config,
                                      NormalizeStats* stats) {
  NormalizeStats local;
  Ctx c(config, sink(stats, local));
  return run_expressions(unit, c);
}

TranslationUnit restructure_statements(const TranslationUnit& unit,
                                       const NormalizeConfig& config, NormalizeStats* stats) {
  NormalizeStats local;
  Ctx c(config, sink(stats, local));
  return run_restructure(unit, c);
}

TranslationUnit canonical_statement_order(const TranslationUnit& unit, NormalizeStats* stats) {
  NormalizeStats local;
  NormalizeConfig cfg;
  Ctx c(cfg, sink(stats, local));
  return run_order(unit, c);
}

TranslationUnit rename_identifiers(const TranslationUnit& unit, NormalizeStats* stats) {
  NormalizeStats local;
  NormalizeConfig cfg;
  Ctx c(cfg, sink(stats, local));
  return run_rename(unit, c);
}

TranslationUnit normalize(const TranslationUnit& unit, const NormalizeConfig& config,
                          NormalizeStats* stats) {
  NormalizeStats local;
  Ctx c(config, sink(stats, local));
  TranslationUnit u = config.has(Rule::Declarations) ? run_declarations(unit, c) : unit;
  const int limit = config.max_iterations;

  for (Stmt& g : u.globals) {
    for (int iter = 0;; ++iter) {
      if (iter >= limit) throw FixpointNotReached(limit);
      c.changes = 0;
      expressions(g, c);
      if (c.changes == 0) break;
    }
  }

  // Global names are fixed up front so each function can converge on its own.
  std::map<std::string, std::string> renamed;
  std::set<std::string> globals = global_names(u);
  if (config.has(Rule::Rename)) {
    int n = 0;
    for (const Stmt& g : u.globals)
      for (const Declarator& d : g.decls) renamed[d.name] = "g" + std::to_string(n++);
    for (const auto& [from, to] : renamed) globals.insert(to);
  }

  c.globals = globals;
  for (FunctionDef& f : u.functions) {
    for (int round = 0;; ++round) {
      if (round >= limit) throw FixpointNotReached(limit);
      FunctionDef before = f;
      for (int iter = 0;; ++iter) {
        if (iter >= limit) throw FixpointNotReached(limit);
        ++c.stats.iterations;
        c.changes = 0;
        control_function(f, c);
        expressions(f.body, c);
        restructure_function(f, c);
        if (c.changes == 0) break;
      }
      if (config.has(Rule::StatementOrder)) order_blocks(f.body, globals, c);
      if (config.has(Rule::Rename)) Renamer(c, renamed).function(f);
      if (f == before) break;
    }
  }

  if (config.has(Rule::Rename)) {
    Renamer top(c, {});
    for (Stmt& g : u.globals) {
      for (Declarator& d : g.decls) {
        if (d.init) top.expr(*d.init);
        d.name = top.bind(d.name, renamed.at(d.name));
      }
    }
  }
  return u;
}

}  // namespace canonc
