#include "canonc/disguiser.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

#include "canonc/analysis.hpp"
#include "canonc/dependence.hpp"
#include "canonc/errors.hpp"
#include "canonc/lexer.hpp"

namespace canonc {

namespace {

constexpr std::string_view kTransformNames[kTransformCount] = {
    "rephrase-control", "swap-if-else", "rephrase-expr", "reorder-operands", "distribute",
    "split-merge",      "reorder-stmts", "rename",      "respell-types",    "split-decl-init",
};

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t sub(std::uint64_t path, std::uint64_t i) { return mix(path ^ mix(i + 1)); }

// Slot tags so that sibling positions of different kinds never share a path.
constexpr std::uint64_t kBranch = 100;
constexpr std::uint64_t kArm = 1000;
constexpr std::uint64_t kExprSlot = 5000;

using StmtFn = std::function<void(Stmt&&, std::uint64_t, std::vector<Stmt>&)>;

void map_list(std::vector<Stmt>& list, std::uint64_t path, const StmtFn& f) {
  std::vector<Stmt> out;
  out.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) f(std::move(list[i]), sub(path, i), out);
  list = std::move(out);
}

void map_slot(Stmt& slot, std::uint64_t path, const StmtFn& f) {
  std::vector<Stmt> out;
  int line = slot.line;
  f(std::move(slot), path, out);
  if (out.size() == 1) {
    slot = std::move(out[0]);
  } else {
    slot = Stmt::block(std::move(out), line);
  }
}

void map_children(Stmt& s, std::uint64_t path, const StmtFn& f) {
  switch (s.kind) {
    case StmtKind::Block: map_list(s.body, path, f); break;
    case StmtKind::If:
    case StmtKind::While:
    case StmtKind::DoWhile:
    case StmtKind::For:
      for (std::size_t k = 0; k < s.body.size(); ++k) map_slot(s.body[k], sub(path, kBranch + k), f);
      break;
    case StmtKind::Switch:
      for (std::size_t a = 0; a < s.cases.size(); ++a) map_list(s.cases[a].body, sub(path, kArm + a), f);
      break;
    default: break;
  }
}

bool is_additive(const Expr& e) {
  return e.is_binary(BinaryOp::Add) || e.is_binary(BinaryOp::Sub);
}

std::optional<AssignOp> compound_of(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return AssignOp::Add;
    case BinaryOp::Sub: return AssignOp::Sub;
    case BinaryOp::Mul: return AssignOp::Mul;
    case BinaryOp::Div: return AssignOp::Div;
    case BinaryOp::Mod: return AssignOp::Mod;
    case BinaryOp::BitAnd: return AssignOp::And;
    case BinaryOp::BitOr: return AssignOp::Or;
    case BinaryOp::BitXor: return AssignOp::Xor;
    case BinaryOp::Shl: return AssignOp::Shl;
    case BinaryOp::Shr: return AssignOp::Shr;
    default: return std::nullopt;
  }
}

bool ends_flow(const std::vector<Stmt>& body) {
  if (body.empty()) return false;
  StmtKind k = body.back().kind;
  return k == StmtKind::Break || k == StmtKind::Return || k == StmtKind::Continue;
}

bool declares_at_top(const Stmt& block) {
  if (!block.is(StmtKind::Block)) return false;
  return std::any_of(block.body.begin(), block.body.end(),
                     [](const Stmt& s) { return s.is(StmtKind::Decl); });
}

std::set<std::string> global_names(const TranslationUnit& u) {
  std::set<std::string> out;
  for (const Stmt& g : u.globals)
    for (const Declarator& d : g.decls) out.insert(d.name);
  return out;
}

std::vector<std::vector<std::string>> respellings(const TypeSpec& t) {
  switch (t.base) {
    case BaseType::Int:
      if (t.sign == Signedness::Unsigned) return {{"unsigned", "int"}, {"unsigned"}};
      return {{"int"}, {"signed", "int"}, {"signed"}};
    case BaseType::Long:
      if (t.sign == Signedness::Unsigned)
        return {{"unsigned", "long"}, {"unsigned", "long", "int"}, {"long", "unsigned", "int"}};
      return {{"long"}, {"long", "int"}, {"signed", "long"}, {"signed", "long", "int"}};
    default: return {};
  }
}

class Disguiser {
 public:
  Disguiser(const DisguiseConfig& cfg, std::vector<TraceRecord>& trace) : cfg_(cfg), trace_(trace) {}

  TranslationUnit run(TranslationUnit u) {
    globals_ = global_names(u);
    if (cfg_.has(Transform::RespellTypes)) respell_types(u);
    if (cfg_.has(Transform::SplitDeclInit)) per_function(u, [&](Stmt&& s, std::uint64_t p, std::vector<Stmt>& o) { decl_init(std::move(s), p, o); });
    if (cfg_.has(Transform::RephraseControl)) per_function(u, [&](Stmt&& s, std::uint64_t p, std::vector<Stmt>& o) { control(std::move(s), p, o); });
    if (cfg_.has(Transform::SwapIfElse)) per_function(u, [&](Stmt&& s, std::uint64_t p, std::vector<Stmt>& o) { swap_if(std::move(s), p, o); });
    if (cfg_.has(Transform::RephraseExpr)) each_expr(u, Transform::RephraseExpr);
    if (cfg_.has(Transform::Distribute)) each_expr(u, Transform::Distribute);
    if (cfg_.has(Transform::ReorderOperands)) each_expr(u, Transform::ReorderOperands);
    if (cfg_.has(Transform::ReorderStmts)) reorder_statements(u);
    if (cfg_.has(Transform::SplitMerge))
      for (std::size_t i = 0; i < u.functions.size(); ++i) split_merge_list(u.functions[i].body.body, function_path(i));
    if (cfg_.has(Transform::Rename)) rename(u);
    return u;
  }

 private:
  // -- randomness -----------------------------------------------------------

  std::uint64_t draw(Transform t, std::uint64_t site, std::uint64_t salt = 0) const {
    return mix(mix(cfg_.seed ^ mix(static_cast<std::uint64_t>(t) + 1)) ^ sub(site, salt));
  }

  bool fires(Transform t, std::uint64_t site, int line) {
    double u = static_cast<double>(draw(t, site) >> 11) * 0x1.0p-53;
    if (!(u < cfg_.intensity)) return false;
    trace_.push_back({std::string(to_string(t)), line});
    return true;
  }

  static std::uint64_t function_path(std::size_t index) { return sub(0xC0FFEE, index); }

  void per_function(TranslationUnit& u, const StmtFn& f) {
    for (std::size_t i = 0; i < u.functions.size(); ++i)
      map_list(u.functions[i].body.body, function_path(i), f);
  }

  // -- respell-types --------------------------------------------------------

  void respell(TypeSpec& t, std::uint64_t site, int line) {
    auto options = respellings(t);
    std::vector<std::vector<std::string>> others;
    for (auto& o : options)
      if (o != t.words) others.push_back(std::move(o));
    if (others.empty() || !fires(Transform::RespellTypes, site, line)) return;
    t.words = others[draw(Transform::RespellTypes, site, 1) % others.size()];
  }

  void respell_types(TranslationUnit& u) {
    for (std::size_t g = 0; g < u.globals.size(); ++g)
      respell(u.globals[g].type, sub(0xB10B, g), u.globals[g].line);
    for (std::size_t i = 0; i < u.functions.size(); ++i) {
      FunctionDef& f = u.functions[i];
      std::uint64_t path = function_path(i);
      respell(f.return_type, sub(path, 0xF00), f.line);
      for (std::size_t p = 0; p < f.params.size(); ++p) respell(f.params[p].type, sub(path, 0xF01 + p), f.line);
      StmtFn fn = [&](Stmt&& s, std::uint64_t sp, std::vector<Stmt>& out) {
        map_children(s, sp, fn);
        if (s.is(StmtKind::Decl)) respell(s.type, sp, s.line);
        for (Stmt& init : s.init)
          if (init.is(StmtKind::Decl)) respell(init.type, sub(sp, 7), s.line);
        out.push_back(std::move(s));
      };
      map_list(f.body.body, path, fn);
    }
  }

  // -- split-decl-init ------------------------------------------------------

  void decl_init(Stmt&& s, std::uint64_t path, std::vector<Stmt>& out) {
    map_children(s, path, [&](Stmt&& c, std::uint64_t p, std::vector<Stmt>& o) { decl_init(std::move(c), p, o); });
    if (s.is(StmtKind::Block)) fuse(s.body, path);
    for (SwitchCase& arm : s.cases) fuse(arm.body, path);
    bool splittable = s.is(StmtKind::Decl) &&
                      (s.decls.size() > 1 || std::any_of(s.decls.begin(), s.decls.end(),
                                                         [](const Declarator& d) { return d.init.has_value(); }));
    if (!splittable || !fires(Transform::SplitDeclInit, path, s.line)) {
      out.push_back(std::move(s));
      return;
    }
    std::vector<Stmt> inits;
    for (Declarator& d : s.decls) {
      out.push_back(Stmt::declaration(s.type, {Declarator{d.name, std::nullopt}}, s.line));
      if (d.init) {
        Stmt a = Stmt::expression(Expr::assign(AssignOp::Assign, d.name, std::move(*d.init)));
        a.line = s.line;
        inits.push_back(std::move(a));
      }
    }
    for (Stmt& a : inits) out.push_back(std::move(a));
  }

  // `T x; x = e;` -> `T x = e;` when e does not mention x.
  void fuse(std::vector<Stmt>& list, std::uint64_t path) {
    for (std::size_t i = 0; i + 1 < list.size(); ++i) {
      Stmt& d = list[i];
      const Stmt& a = list[i + 1];
      if (!d.is(StmtKind::Decl) || d.decls.size() != 1 || d.decls[0].init) continue;
      if (!a.is(StmtKind::Expr) || !a.expr->is(ExprKind::Assign) ||
          a.expr->assign_op != AssignOp::Assign || a.expr->text != d.decls[0].name)
        continue;
      if (count_mentions(a.expr->kids[0], d.decls[0].name) != 0) continue;
      if (!fires(Transform::SplitDeclInit, sub(path, 0xF05E + i), d.line)) continue;
      d.decls[0].init = list[i + 1].expr->kids[0];
      list.erase(list.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
  }

  // -- rephrase-control -----------------------------------------------------

  void control(Stmt&& s, std::uint64_t path, std::vector<Stmt>& out) {
    map_children(s, path, [&](Stmt&& c, std::uint64_t p, std::vector<Stmt>& o) { control(std::move(c), p, o); });
    if (s.is(StmtKind::For) && !has_free_continue(s.loop_body()) &&
        fires(Transform::RephraseControl, path, s.line)) {
      for_to_while(std::move(s), out);
      return;
    }
    if (s.is(StmtKind::If) && switchable(s) && fires(Transform::RephraseControl, path, s.line)) {
      out.push_back(chain_to_switch(std::move(s)));
      return;
    }
    out.push_back(std::move(s));
  }

  static void for_to_while(Stmt&& s, std::vector<Stmt>& out) {
    int line = s.line;
    Expr cond = s.expr ? std::move(*s.expr) : Expr::bool_lit(true, line);
    std::vector<Stmt> body;
    Stmt& b = s.loop_body();
    std::set<std::string> late;
    if (s.step) {
      collect_reads(*s.step, late);
      collect_writes(*s.step, late);
    }
    bool shadow = false;
    if (b.is(StmtKind::Block)) {
      for (const Stmt& x : b.body)
        if (x.is(StmtKind::Decl))
          for (const Declarator& d : x.decls) shadow = shadow || late.count(d.name);
    }
    if (b.is(StmtKind::Block) && !shadow) {
      body = std::move(b.body);
    } else {
      body.push_back(std::move(b));
    }
    if (s.step) {
      Stmt step = Stmt::expression(std::move(*s.step));
      step.line = line;
      body.push_back(std::move(step));
    }
    Stmt loop = Stmt::while_(std::move(cond), Stmt::block(std::move(body), line));
    loop.line = line;
    if (!s.init.empty() && s.init[0].is(StmtKind::Decl)) {
      std::vector<Stmt> scope;
      scope.push_back(std::move(s.init[0]));
      scope.push_back(std::move(loop));
      out.push_back(Stmt::block(std::move(scope), line));
      return;
    }
    if (!s.init.empty()) out.push_back(std::move(s.init[0]));
    out.push_back(std::move(loop));
  }

  struct ChainArm {
    const Expr* label;
    const Stmt* body;
  };

  // Tests of one pure variable against distinct constants, no break inside.
  static bool chain_arms(const Stmt& s, std::vector<ChainArm>& arms, const Stmt*& tail) {
    const Stmt* cur = &s;
    std::string var;
    std::set<std::int64_t> seen;
    while (cur && cur->is(StmtKind::If)) {
      const Expr& c = *cur->expr;
      if (!c.is_binary(BinaryOp::Eq)) return false;
      const Expr* v = &c.lhs();
      const Expr* k = &c.rhs();
      if (!v->is(ExprKind::Ident)) std::swap(v, k);
      bool constant = k->is(ExprKind::IntLit) || k->is(ExprKind::CharLit);
      if (!v->is(ExprKind::Ident) || !constant) return false;
      if (var.empty()) var = v->text;
      if (v->text != var || !seen.insert(k->value).second) return false;
      if (has_free_break(cur->then_branch())) return false;
      arms.push_back({k, &cur->then_branch()});
      cur = cur->has_else() ? &cur->else_branch() : nullptr;
    }
    if (cur && has_free_break(*cur)) return false;
    tail = cur;
    return arms.size() >= 2;
  }

  static bool switchable(const Stmt& s) {
    std::vector<ChainArm> arms;
    const Stmt* tail = nullptr;
    return chain_arms(s, arms, tail);
  }

  static std::vector<Stmt> arm_body(const Stmt& b) {
    std::vector<Stmt> body;
    if (b.is(StmtKind::Block) && !declares_at_top(b)) {
      body = b.body;
    } else {
      body.push_back(b);
    }
    if (!ends_flow(body)) body.push_back(Stmt::break_(b.line));
    return body;
  }

  static Stmt chain_to_switch(Stmt&& s) {
    std::vector<ChainArm> arms;
    const Stmt* tail = nullptr;
    chain_arms(s, arms, tail);
    const Expr& c = *s.expr;
    Expr var = c.lhs().is(ExprKind::Ident) ? c.lhs() : c.rhs();
    Stmt sw;
    sw.kind = StmtKind::Switch;
    sw.line = s.line;
    sw.expr = std::move(var);
    for (const ChainArm& a : arms)
      sw.cases.push_back(SwitchCase{*a.label, arm_body(*a.body), a.body->line});
    if (tail) sw.cases.push_back(SwitchCase{std::nullopt, arm_body(*tail), tail->line});
    return sw;
  }

  // -- swap-if-else ---------------------------------------------------------

  void swap_if(Stmt&& s, std::uint64_t path, std::vector<Stmt>& out) {
    map_children(s, path, [&](Stmt&& c, std::uint64_t p, std::vector<Stmt>& o) { swap_if(std::move(c), p, o); });
    if (s.has_else() && fires(Transform::SwapIfElse, path, s.line)) {
      if (s.expr->is_unary(UnaryOp::Not)) {
        Expr inner = std::move(s.expr->kids[0]);
        s.expr = std::move(inner);
      } else {
        s.expr = Expr::unary(UnaryOp::Not, std::move(*s.expr));
      }
      std::swap(s.body[0], s.body[1]);
    }
    out.push_back(std::move(s));
  }

  // -- expression transforms ------------------------------------------------

  void each_expr(TranslationUnit& u, Transform t) {
    for (std::size_t i = 0; i < u.functions.size(); ++i) {
      StmtFn fn = [&](Stmt&& s, std::uint64_t sp, std::vector<Stmt>& out) {
        map_children(s, sp, fn);
        auto slot = [&](std::optional<Expr>& e, std::uint64_t k, bool discard) {
          if (e) expr(t, *e, sub(sp, kExprSlot + k), discard, s.line);
        };
        slot(s.expr, 0, s.is(StmtKind::Expr));
        slot(s.step, 1, true);
        for (std::size_t d = 0; d < s.decls.size(); ++d) slot(s.decls[d].init, 2 + d, false);
        for (Stmt& init : s.init) {
          slot(init.expr, 0x100, true);
          for (std::size_t d = 0; d < init.decls.size(); ++d) slot(init.decls[d].init, 0x101 + d, false);
        }
        out.push_back(std::move(s));
      };
      map_list(u.functions[i].body.body, function_path(i), fn);
    }
  }

  void expr(Transform t, Expr& e, std::uint64_t path, bool discard, int line) {
    if (t == Transform::ReorderOperands) {
      reorder_operands(e, path, line);
      return;
    }
    for (std::size_t k = 0; k < e.kids.size(); ++k) {
      bool kid_discard = e.is(ExprKind::Comma) && (k + 1 < e.kids.size() || discard);
      expr(t, e.kids[k], sub(path, k), kid_discard, line);
    }
    if (t == Transform::RephraseExpr) rephrase(e, path, discard, line);
    if (t == Transform::Distribute) distribute(e, path, line);
  }

  void rephrase(Expr& e, std::uint64_t path, bool discard, int line) {
    switch (e.kind) {
      case ExprKind::Binary:
        if (e.binary_op == BinaryOp::Lt && fires(Transform::RephraseExpr, path, line)) {
          e = Expr::unary(UnaryOp::Not, Expr::binary(BinaryOp::Ge, std::move(e.kids[0]), std::move(e.kids[1])));
        }
        return;
      case ExprKind::Unary: {
        UnaryOp op = e.unary_op;
        bool pre = op == UnaryOp::PreInc || op == UnaryOp::PreDec;
        bool post = op == UnaryOp::PostInc || op == UnaryOp::PostDec;
        if ((pre || (post && discard)) && fires(Transform::RephraseExpr, path, line)) {
          bool inc = op == UnaryOp::PreInc || op == UnaryOp::PostInc;
          std::string name = e.operand().text;
          e = Expr::assign(AssignOp::Assign, name,
                           Expr::binary(inc ? BinaryOp::Add : BinaryOp::Sub, Expr::ident(name, e.line),
                                        Expr::int_lit(1, e.line)));
        }
        return;
      }
      case ExprKind::Assign: {
        if (e.assign_op != AssignOp::Assign) {
          if (!fires(Transform::RephraseExpr, path, line)) return;
          e = Expr::assign(AssignOp::Assign, e.text,
                           Expr::binary(compound_operator(e.assign_op), Expr::ident(e.text, e.line),
                                        std::move(e.kids[0])));
          return;
        }
        const Expr& v = e.kids[0];
        if (!v.is(ExprKind::Binary) || !v.lhs().is(ExprKind::Ident) || v.lhs().text != e.text) return;
        auto op = compound_of(v.binary_op);
        if (!op || !fires(Transform::RephraseExpr, path, line)) return;
        Expr rhs = std::move(e.kids[0].kids[1]);
        e = Expr::assign(*op, e.text, std::move(rhs));
        return;
      }
      default: return;
    }
  }

  void distribute(Expr& e, std::uint64_t path, int line) {
    if (!e.is(ExprKind::Binary) || !is_pure(e)) return;
    if (e.binary_op == BinaryOp::Mul) {
      bool right = is_additive(e.rhs());
      bool left = !right && is_additive(e.lhs());
      if (!(right || left) || !fires(Transform::Distribute, path, line)) return;
      Expr x = right ? e.lhs() : e.rhs();
      const Expr& sum = right ? e.rhs() : e.lhs();
      auto times = [&](const Expr& t) {
        return right ? Expr::binary(BinaryOp::Mul, x, t) : Expr::binary(BinaryOp::Mul, t, x);
      };
      e = Expr::binary(sum.binary_op, times(sum.lhs()), times(sum.rhs()));
      return;
    }
    if (e.binary_op == BinaryOp::LogAnd && e.rhs().is_binary(BinaryOp::LogOr) &&
        fires(Transform::Distribute, path, line)) {
      const Expr& x = e.lhs();
      const Expr& d = e.rhs();
      e = Expr::binary(BinaryOp::LogOr, Expr::binary(BinaryOp::LogAnd, x, d.lhs()),
                       Expr::binary(BinaryOp::LogAnd, x, d.rhs()));
    }
  }

  struct Term {
    Expr e;
    bool negative;
  };

  static void flatten(const Expr& e, bool sum, bool negative, std::vector<Term>& out) {
    bool chain = sum ? is_additive(e) : e.is_binary(BinaryOp::Mul);
    if (!chain) {
      out.push_back({e, negative});
      return;
    }
    flatten(e.lhs(), sum, negative, out);
    flatten(e.rhs(), sum, sum && e.binary_op == BinaryOp::Sub ? !negative : negative, out);
  }

  void reorder_operands(Expr& e, std::uint64_t path, int line) {
    bool sum = is_additive(e);
    std::vector<Term> terms;
    if (sum || e.is_binary(BinaryOp::Mul)) flatten(e, sum, false, terms);
    bool pure = std::all_of(terms.begin(), terms.end(), [](const Term& t) { return is_pure(t.e); });
    if (terms.size() < 2 || !pure || !fires(Transform::ReorderOperands, path, line)) {
      for (std::size_t k = 0; k < e.kids.size(); ++k) reorder_operands(e.kids[k], sub(path, k), line);
      return;
    }
    for (std::size_t k = 0; k < terms.size(); ++k) reorder_operands(terms[k].e, sub(path, k), line);
    std::uint64_t r = draw(Transform::ReorderOperands, path, 1);
    for (std::size_t i = terms.size() - 1; i > 0; --i) {
      r = mix(r);
      std::swap(terms[i], terms[r % (i + 1)]);
    }
    auto first = std::find_if(terms.begin(), terms.end(), [](const Term& t) { return !t.negative; });
    std::rotate(terms.begin(), first, first + 1);
    Expr acc = std::move(terms[0].e);
    for (std::size_t i = 1; i < terms.size(); ++i) {
      BinaryOp op = !sum ? BinaryOp::Mul : terms[i].negative ? BinaryOp::Sub : BinaryOp::Add;
      acc = Expr::binary(op, std::move(acc), std::move(terms[i].e));
    }
    e = std::move(acc);
  }

  // -- reorder-stmts --------------------------------------------------------

  void shuffle(std::vector<Stmt>& list, std::uint64_t path) {
    if (list.size() < 2) return;
    int line = list.front().line;
    if (!fires(Transform::ReorderStmts, path, line)) return;
    std::vector<std::string> keys;
    for (std::size_t i = 0; i < list.size(); ++i) {
      char buf[24];
      std::snprintf(buf, sizeof buf, "%016llx",
                    static_cast<unsigned long long>(draw(Transform::ReorderStmts, path, i + 1)));
      keys.emplace_back(buf);
    }
    std::vector<std::size_t> perm = order_topologically(build_dependence_graph(list, globals_), keys);
    std::vector<Stmt> out;
    for (std::size_t k : perm) out.push_back(std::move(list[k]));
    list = std::move(out);
  }

  void reorder_statements(TranslationUnit& u) {
    for (std::size_t i = 0; i < u.functions.size(); ++i) {
      StmtFn fn = [&](Stmt&& s, std::uint64_t sp, std::vector<Stmt>& out) {
        map_children(s, sp, fn);
        if (s.is(StmtKind::Block)) shuffle(s.body, sp);
        for (std::size_t a = 0; a < s.cases.size(); ++a) shuffle(s.cases[a].body, sub(sp, kArm + a));
        out.push_back(std::move(s));
      };
      std::uint64_t path = function_path(i);
      map_list(u.functions[i].body.body, path, fn);
      shuffle(u.functions[i].body.body, path);
    }
  }

  // -- split-merge ----------------------------------------------------------

  bool touches_global(const Expr& e) const {
    std::set<std::string> names;
    collect_reads(e, names);
    collect_writes(e, names);
    return std::any_of(names.begin(), names.end(), [&](const std::string& n) { return globals_.count(n) > 0; });
  }

  void split_merge(Stmt&& s, std::uint64_t path, std::vector<Stmt>& out) {
    if (s.is(StmtKind::Block)) {
      split_merge_list(s.body, path);
    } else if (s.is(StmtKind::Switch)) {
      for (std::size_t a = 0; a < s.cases.size(); ++a) split_merge_list(s.cases[a].body, sub(path, kArm + a));
    } else {
      map_children(s, path, [&](Stmt&& c, std::uint64_t p, std::vector<Stmt>& o) { split_merge(std::move(c), p, o); });
    }
    split(std::move(s), path, out);
  }

  // Merged statements are left alone so the split below cannot undo them.
  void split_merge_list(std::vector<Stmt>& list, std::uint64_t path) {
    std::vector<bool> merged = merge(list, path);
    std::vector<Stmt> out;
    out.reserve(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (merged[i]) {
        out.push_back(std::move(list[i]));
      } else {
        split_merge(std::move(list[i]), sub(path, i), out);
      }
    }
    list = std::move(out);
  }

  void split(Stmt&& s, std::uint64_t path, std::vector<Stmt>& out) {
    if (!s.is(StmtKind::Expr)) {
      out.push_back(std::move(s));
      return;
    }
    Expr& e = *s.expr;
    int line = s.line;
    auto emit_stmt = [&](Expr x, std::uint64_t p) {
      Stmt st = Stmt::expression(std::move(x));
      st.line = line;
      split(std::move(st), p, out);
    };
    if (e.is(ExprKind::Comma) && fires(Transform::SplitMerge, path, line)) {
      for (std::size_t k = 0; k < e.kids.size(); ++k) emit_stmt(std::move(e.kids[k]), sub(path, k));
      return;
    }
    if (e.is(ExprKind::Assign) && e.kids[0].is(ExprKind::Assign)) {
      // x op= (y = E)  ->  y = E; x op= y;
      const Expr& inner = e.kids[0];
      std::set<std::string> w;
      collect_writes(inner.kids[0], w);
      bool ok = inner.text != e.text && !w.count(e.text) &&
                (!contains_call(inner.kids[0]) || !globals_.count(e.text));
      if (ok && fires(Transform::SplitMerge, path, line)) {
        std::string y = inner.text;
        Expr hoisted = std::move(e.kids[0]);
        e.kids[0] = Expr::ident(y, line);
        emit_stmt(std::move(hoisted), sub(path, 1));
        out.push_back(std::move(s));
        return;
      }
    }
    if (e.is(ExprKind::Assign) && e.assign_op == AssignOp::Assign && e.kids[0].is(ExprKind::Binary)) {
      // x = L op R  ->  x = L; x op= R;
      const Expr& v = e.kids[0];
      auto op = compound_of(v.binary_op);
      bool self = v.lhs().is(ExprKind::Ident) && v.lhs().text == e.text;
      bool ok = op && !self && is_pure(v.rhs()) && count_mentions(v.rhs(), e.text) == 0;
      if (ok && fires(Transform::SplitMerge, sub(path, 2), line)) {
        std::string x = e.text;
        Expr rhs = v.rhs();
        Expr lhs = v.lhs();
        emit_stmt(Expr::assign(AssignOp::Assign, x, std::move(lhs)), sub(path, 3));
        Stmt tail = Stmt::expression(Expr::assign(*op, x, std::move(rhs)));
        tail.line = line;
        out.push_back(std::move(tail));
        return;
      }
    }
    out.push_back(std::move(s));
  }

  // The leftmost operand evaluated first in `e`, when it is reached before
  // any side effect or short-circuit.
  static Expr* first_operand(Expr& e) {
    if (e.is(ExprKind::Binary) && e.binary_op != BinaryOp::LogAnd && e.binary_op != BinaryOp::LogOr)
      return first_operand(e.kids[0]);
    if (e.is_unary(UnaryOp::Neg) || e.is_unary(UnaryOp::Not) || e.is_unary(UnaryOp::BitNot))
      return first_operand(e.kids[0]);
    return &e;
  }

  // x = E; y = F(x)  ->  y = F(x = E)
  std::vector<bool> merge(std::vector<Stmt>& list, std::uint64_t path) {
    std::vector<bool> merged(list.size(), false);
    auto plain = [](const Stmt& s) {
      return s.is(StmtKind::Expr) && s.expr->is(ExprKind::Assign) && s.expr->assign_op == AssignOp::Assign;
    };
    for (std::size_t i = 0; i + 1 < list.size(); ++i) {
      if (!plain(list[i]) || !plain(list[i + 1])) continue;
      const Expr& a = *list[i].expr;
      Expr& b = *list[i + 1].expr;
      if (a.text == b.text || contains_assignment(a.kids[0]) || !is_pure(b.kids[0])) continue;
      if (count_mentions(b.kids[0], a.text) != 1) continue;
      Expr* slot = first_operand(b.kids[0]);
      if (!slot->is(ExprKind::Ident) || slot->text != a.text) continue;
      std::uint64_t site = sub(path, 0x3E76E + i);
      // a coin leaves half the candidates to the splitter
      if (draw(Transform::SplitMerge, site, 1) & 1) continue;
      if (!fires(Transform::SplitMerge, site, list[i].line)) continue;
      *slot = a;
      list.erase(list.begin() + static_cast<std::ptrdiff_t>(i));
      merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(i));
      merged[i] = true;
    }
    return merged;
  }

  // -- rename ---------------------------------------------------------------

  class Renamer {
   public:
    Renamer(Disguiser& d, std::set<std::string> taken) : d_(d), taken_(std::move(taken)) {
      scopes_.emplace_back();
    }

    std::string fresh(const std::string& old, std::uint64_t site, int line) {
      if (!d_.fires(Transform::Rename, site, line)) return old;
      static constexpr std::string_view pool[] = {
          "acc", "tmp", "val", "idx", "cnt", "res", "num", "len", "pos", "cur",
          "item", "total", "sum", "data", "step", "limit", "prod", "part", "left", "right"};
      std::string_view stem = pool[d_.draw(Transform::Rename, site, 1) % std::size(pool)];
      std::string name;
      do {
        name = std::string(stem) + std::to_string(counter_++);
      } while (taken_.count(name) || is_keyword(name));
      taken_.insert(name);
      return name;
    }

    std::string bind(const std::string& old, std::uint64_t site, int line) {
      std::string name = fresh(old, site, line);
      scopes_.back()[old] = name;
      return name;
    }

    void push() { scopes_.emplace_back(); }
    void pop() { scopes_.pop_back(); }

    void expr(Expr& e) {
      if (e.is(ExprKind::Ident) || e.is(ExprKind::Assign)) e.text = lookup(e.text);
      for (Expr& k : e.kids) expr(k);
    }

    void stmt(Stmt& s, std::uint64_t path) {
      auto ex = [&](std::optional<Expr>& e) {
        if (e) expr(*e);
      };
      switch (s.kind) {
        case StmtKind::Decl:
          for (std::size_t i = 0; i < s.decls.size(); ++i) {
            Declarator& d = s.decls[i];
            if (d.init) expr(*d.init);
            d.name = bind(d.name, sub(path, i), s.line);
          }
          break;
        case StmtKind::Block:
          push();
          for (std::size_t i = 0; i < s.body.size(); ++i) stmt(s.body[i], sub(path, i));
          pop();
          break;
        case StmtKind::For:
          push();
          for (Stmt& i : s.init) stmt(i, sub(path, 7));
          ex(s.expr);
          ex(s.step);
          push();
          stmt(s.loop_body(), sub(path, kBranch));
          pop();
          pop();
          break;
        case StmtKind::Switch:
          ex(s.expr);
          push();
          for (std::size_t a = 0; a < s.cases.size(); ++a)
            for (std::size_t i = 0; i < s.cases[a].body.size(); ++i)
              stmt(s.cases[a].body[i], sub(sub(path, kArm + a), i));
          pop();
          break;
        default:
          ex(s.expr);
          for (std::size_t k = 0; k < s.body.size(); ++k) {
            push();
            stmt(s.body[k], sub(path, kBranch + k));
            pop();
          }
          break;
      }
    }

   private:
    std::string lookup(const std::string& name) const {
      for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
        auto f = it->find(name);
        if (f != it->end()) return f->second;
      }
      return name;
    }

    Disguiser& d_;
    std::set<std::string> taken_;
    std::vector<std::map<std::string, std::string>> scopes_;
    int counter_ = 0;
  };

  static void collect_all_names(const Stmt& s, std::set<std::string>& out) {
    for_each_expr(s, [&](const Expr& e) {
      collect_reads(e, out);
      collect_writes(e, out);
      std::function<void(const Expr&)> calls = [&](const Expr& x) {
        if (x.is(ExprKind::Call)) out.insert(x.text);
        for (const Expr& k : x.kids) calls(k);
      };
      calls(e);
    });
    collect_declared(s, out);
  }

  void rename(TranslationUnit& u) {
    std::set<std::string> taken;
    for (const Stmt& g : u.globals) collect_all_names(g, taken);
    for (const FunctionDef& f : u.functions) {
      taken.insert(f.name);
      for (const Param& p : f.params) taken.insert(p.name);
      collect_all_names(f.body, taken);
    }
    Renamer r(*this, taken);
    for (std::size_t g = 0; g < u.globals.size(); ++g) {
      Stmt& decl = u.globals[g];
      for (std::size_t i = 0; i < decl.decls.size(); ++i) {
        if (decl.decls[i].init) r.expr(*decl.decls[i].init);
        decl.decls[i].name = r.bind(decl.decls[i].name, sub(sub(0xB10B, g), i), decl.line);
      }
    }
    for (std::size_t i = 0; i < u.functions.size(); ++i) {
      FunctionDef& f = u.functions[i];
      std::uint64_t path = function_path(i);
      r.push();
      for (std::size_t p = 0; p < f.params.size(); ++p)
        f.params[p].name = r.bind(f.params[p].name, sub(path, 0xF01 + p), f.line);
      for (std::size_t k = 0; k < f.body.body.size(); ++k) r.stmt(f.body.body[k], sub(path, k));
      r.pop();
    }
  }

  const DisguiseConfig& cfg_;
  std::vector<TraceRecord>& trace_;
  std::set<std::string> globals_;
};

}  // namespace

std::string_view to_string(Transform t) { return kTransformNames[static_cast<int>(t)]; }

std::optional<Transform> transform_from_string(std::string_view name) {
  for (int i = 0; i < kTransformCount; ++i)
    if (kTransformNames[i] == name) return static_cast<Transform>(i);
  return std::nullopt;
}

DisguiseResult disguise_trace(const TranslationUnit& unit, const DisguiseConfig& config) {
  if (!(config.intensity >= 0.0 && config.intensity <= 1.0))
    throw ParameterError("InvalidParameter", "intensity must be within [0, 1]");
  DisguiseResult r;
  r.unit = Disguiser(config, r.trace).run(unit);
  return r;
}

TranslationUnit disguise(const TranslationUnit& unit, const DisguiseConfig& config) {
  return disguise_trace(unit, config).unit;
}

}  // namespace canonc
