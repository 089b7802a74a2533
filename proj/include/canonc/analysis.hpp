#pragma once

#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "canonc/ast.hpp"

namespace canonc {

// Expression queries --------------------------------------------------------

/// Assignments, ++/-- and calls have side effects; everything else is pure.
bool is_pure(const Expr& e);
bool contains_call(const Expr& e);
bool contains_assignment(const Expr& e);

/// Occurrences of `name` as a read or as an assignment target.
int count_mentions(const Expr& e, std::string_view name);

void collect_reads(const Expr& e, std::set<std::string>& out);
void collect_writes(const Expr& e, std::set<std::string>& out);

/// Number of operator nodes (unary, binary, assignment, call, comma).
int operator_count(const Expr& e);

// Statement queries ---------------------------------------------------------

/// Variables a statement reads and writes (nested statements included),
/// the names it declares at its own level, and whether it calls a function or
/// transfers control out of itself.
struct StmtAccess {
  std::set<std::string> reads;
  std::set<std::string> writes;
  std::set<std::string> declares;
  bool has_call = false;
  bool escapes = false;  // return anywhere, or break/continue not bound inside
};

StmtAccess access_of(const Stmt& s);

/// True when `s` contains a `break` (resp. `continue`) that targets a
/// statement enclosing `s` rather than a loop/switch inside it.
bool has_free_break(const Stmt& s);
bool has_free_continue(const Stmt& s);

/// Names declared by Decl statements anywhere inside `s`.
void collect_declared(const Stmt& s, std::set<std::string>& out);

// Traversal -----------------------------------------------------------------

/// Calls `fn` on every statement list (block bodies and switch arms) inside
/// `s`, innermost first.
void for_each_block(Stmt& s, const std::function<void(std::vector<Stmt>&)>& fn);

/// Calls `fn` on every top-level expression slot of `s` and of every nested
/// statement (conditions, steps, initializers, return values).
void for_each_expr(Stmt& s, const std::function<void(Expr&)>& fn);
void for_each_expr(const Stmt& s, const std::function<void(const Expr&)>& fn);

/// Total node count (statements + expressions), a cheap size metric.
std::size_t node_count(const Stmt& s);

}  // namespace canonc
