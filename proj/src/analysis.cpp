#include "canonc/analysis.hpp"

namespace canonc {

bool is_pure(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Assign:
    case ExprKind::Call: return false;
    case ExprKind::Unary:
      if (e.unary_op == UnaryOp::PreInc || e.unary_op == UnaryOp::PreDec ||
          e.unary_op == UnaryOp::PostInc || e.unary_op == UnaryOp::PostDec)
        return false;
      break;
    default: break;
  }
  for (const Expr& k : e.kids)
    if (!is_pure(k)) return false;
  return true;
}

bool contains_call(const Expr& e) {
  if (e.is(ExprKind::Call)) return true;
  for (const Expr& k : e.kids)
    if (contains_call(k)) return true;
  return false;
}

bool contains_assignment(const Expr& e) {
  if (e.is(ExprKind::Assign)) return true;
  if (e.is(ExprKind::Unary) && e.unary_op != UnaryOp::Neg && e.unary_op != UnaryOp::Not &&
      e.unary_op != UnaryOp::BitNot)
    return true;
  for (const Expr& k : e.kids)
    if (contains_assignment(k)) return true;
  return false;
}

int count_mentions(const Expr& e, std::string_view name) {
  int n = 0;
  if ((e.is(ExprKind::Ident) || e.is(ExprKind::Assign)) && e.text == name) ++n;
  for (const Expr& k : e.kids) n += count_mentions(k, name);
  return n;
}

void collect_reads(const Expr& e, std::set<std::string>& out) {
  if (e.is(ExprKind::Ident)) out.insert(e.text);
  // Compound assignment reads its target.
  if (e.is(ExprKind::Assign) && e.assign_op != AssignOp::Assign) out.insert(e.text);
  for (const Expr& k : e.kids) collect_reads(k, out);
}

void collect_writes(const Expr& e, std::set<std::string>& out) {
  if (e.is(ExprKind::Assign)) out.insert(e.text);
  if (e.is(ExprKind::Unary) && !e.kids.empty() && e.operand().is(ExprKind::Ident) &&
      e.unary_op != UnaryOp::Neg && e.unary_op != UnaryOp::Not && e.unary_op != UnaryOp::BitNot)
    out.insert(e.operand().text);
  for (const Expr& k : e.kids) collect_writes(k, out);
}

int operator_count(const Expr& e) {
  int n = 0;
  switch (e.kind) {
    case ExprKind::Unary:
    case ExprKind::Binary:
    case ExprKind::Assign:
    case ExprKind::Call:
    case ExprKind::Comma: n = 1; break;
    default: break;
  }
  for (const Expr& k : e.kids) n += operator_count(k);
  return n;
}

// ---------------------------------------------------------------------------

namespace {

void access_expr(const Expr& e, StmtAccess& a) {
  collect_reads(e, a.reads);
  collect_writes(e, a.writes);
  if (contains_call(e)) a.has_call = true;
}

// `loops`/`switches` count the constructs between `s` and the statement whose
// escapes are being computed.
void access_rec(const Stmt& s, StmtAccess& a, int loops, int switches, bool top) {
  auto expr = [&](const std::optional<Expr>& e) {
    if (e) access_expr(*e, a);
  };
  switch (s.kind) {
    case StmtKind::Expr: expr(s.expr); break;
    case StmtKind::Decl:
      for (const Declarator& d : s.decls) {
        if (d.init) access_expr(*d.init, a);
        a.writes.insert(d.name);
        if (top) a.declares.insert(d.name);
      }
      break;
    case StmtKind::Block:
      for (const Stmt& c : s.body) access_rec(c, a, loops, switches, false);
      break;
    case StmtKind::If:
      expr(s.expr);
      for (const Stmt& c : s.body) access_rec(c, a, loops, switches, false);
      break;
    case StmtKind::While:
    case StmtKind::DoWhile:
      expr(s.expr);
      access_rec(s.loop_body(), a, loops + 1, switches, false);
      break;
    case StmtKind::For:
      for (const Stmt& i : s.init) access_rec(i, a, loops + 1, switches, false);
      expr(s.expr);
      expr(s.step);
      access_rec(s.loop_body(), a, loops + 1, switches, false);
      break;
    case StmtKind::Switch:
      expr(s.expr);
      for (const SwitchCase& arm : s.cases) {
        if (arm.label) access_expr(*arm.label, a);
        for (const Stmt& c : arm.body) access_rec(c, a, loops, switches + 1, false);
      }
      break;
    case StmtKind::Break:
      if (loops == 0 && switches == 0) a.escapes = true;
      break;
    case StmtKind::Continue:
      if (loops == 0) a.escapes = true;
      break;
    case StmtKind::Return:
      expr(s.expr);
      a.escapes = true;
      break;
  }
}

bool free_jump(const Stmt& s, StmtKind jump, int loops, int switches) {
  switch (s.kind) {
    case StmtKind::Break: return jump == StmtKind::Break && loops == 0 && switches == 0;
    case StmtKind::Continue: return jump == StmtKind::Continue && loops == 0;
    case StmtKind::Block:
    case StmtKind::If:
      for (const Stmt& c : s.body)
        if (free_jump(c, jump, loops, switches)) return true;
      return false;
    case StmtKind::While:
    case StmtKind::DoWhile:
    case StmtKind::For: return free_jump(s.loop_body(), jump, loops + 1, switches);
    case StmtKind::Switch:
      for (const SwitchCase& arm : s.cases)
        for (const Stmt& c : arm.body)
          if (free_jump(c, jump, loops, switches + 1)) return true;
      return false;
    default: return false;
  }
}

}  // namespace

StmtAccess access_of(const Stmt& s) {
  StmtAccess a;
  access_rec(s, a, 0, 0, true);
  return a;
}

bool has_free_break(const Stmt& s) { return free_jump(s, StmtKind::Break, 0, 0); }
bool has_free_continue(const Stmt& s) { return free_jump(s, StmtKind::Continue, 0, 0); }

void collect_declared(const Stmt& s, std::set<std::string>& out) {
  if (s.is(StmtKind::Decl))
    for (const Declarator& d : s.decls) out.insert(d.name);
  for (const Stmt& i : s.init) collect_declared(i, out);
  for (const Stmt& c : s.body) collect_declared(c, out);
  for (const SwitchCase& arm : s.cases)
    for (const Stmt& c : arm.body) collect_declared(c, out);
}

void for_each_block(Stmt& s, const std::function<void(std::vector<Stmt>&)>& fn) {
  for (Stmt& i : s.init) for_each_block(i, fn);
  for (Stmt& c : s.body) for_each_block(c, fn);
  for (SwitchCase& arm : s.cases) {
    for (Stmt& c : arm.body) for_each_block(c, fn);
    fn(arm.body);
  }
  if (s.is(StmtKind::Block)) fn(s.body);
}

void for_each_expr(Stmt& s, const std::function<void(Expr&)>& fn) {
  if (s.expr) fn(*s.expr);
  if (s.step) fn(*s.step);
  for (Declarator& d : s.decls)
    if (d.init) fn(*d.init);
  for (Stmt& i : s.init) for_each_expr(i, fn);
  for (Stmt& c : s.body) for_each_expr(c, fn);
  for (SwitchCase& arm : s.cases)
    for (Stmt& c : arm.body) for_each_expr(c, fn);
}

void for_each_expr(const Stmt& s, const std::function<void(const Expr&)>& fn) {
  if (s.expr) fn(*s.expr);
  if (s.step) fn(*s.step);
  for (const Declarator& d : s.decls)
    if (d.init) fn(*d.init);
  for (const Stmt& i : s.init) for_each_expr(i, fn);
  for (const Stmt& c : s.body) for_each_expr(c, fn);
  for (const SwitchCase& arm : s.cases)
    for (const Stmt& c : arm.body) for_each_expr(c, fn);
}

namespace {
std::size_t expr_nodes(const Expr& e) {
  std::size_t n = 1;
  for (const Expr& k : e.kids) n += expr_nodes(k);
  return n;
}
}  // namespace

std::size_t node_count(const Stmt& s) {
  std::size_t n = 1;
  if (s.expr) n += expr_nodes(*s.expr);
  if (s.step) n += expr_nodes(*s.step);
  for (const Declarator& d : s.decls)
    if (d.init) n += expr_nodes(*d.init);
  for (const Stmt& i : s.init) n += node_count(i);
  for (const Stmt& c : s.body) n += node_count(c);
  for (const SwitchCase& arm : s.cases)
    for (const Stmt& c : arm.body) n += node_count(c);
  return n;
}

}  // namespace canonc
