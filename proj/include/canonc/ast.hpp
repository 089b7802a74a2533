#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace canonc {

// ---------------------------------------------------------------------------
// Operators

enum class UnaryOp { Neg, Not, BitNot, PreInc, PreDec, PostInc, PostDec };

enum class BinaryOp {
  Add, Sub, Mul, Div, Mod,
  Lt, Gt, Le, Ge, Eq, Ne,
  LogAnd, LogOr,
  BitAnd, BitOr, BitXor,
  Shl, Shr,
};

enum class AssignOp { Assign, Add, Sub, Mul, Div, Mod, And, Or, Xor, Shl, Shr };

std::string_view spelling(UnaryOp op);
std::string_view spelling(BinaryOp op);
std::string_view spelling(AssignOp op);

/// C binding strength, higher binds tighter (comma = 1 ... postfix = 15).
int precedence(BinaryOp op);

/// The binary operator a compound assignment applies (`+=` -> `+`).
/// Must not be called with AssignOp::Assign.
BinaryOp compound_operator(AssignOp op);

// ---------------------------------------------------------------------------
// Expressions

enum class ExprKind {
  IntLit,
  CharLit,
  FloatLit,
  StringLit,
  BoolLit,
  Ident,
  Unary,
  Binary,
  Assign,
  Call,
  Comma,
};

/// Expression node. Parentheses are not represented; nesting is structural.
///
/// Field use by kind:
///   IntLit/CharLit/BoolLit  value (CharLit also keeps its spelling in text)
///   FloatLit/StringLit      text (source spelling)
///   Ident                   text (name)
///   Unary                   unary_op, kids[0]
///   Binary                  binary_op, kids[0] (lhs), kids[1] (rhs)
///   Assign                  assign_op, text (target name), kids[0] (value)
///   Call                    text (callee), kids (arguments)
///   Comma                   kids (>= 2 parts)
struct Expr {
  ExprKind kind = ExprKind::IntLit;
  std::int64_t value = 0;
  std::string text;
  UnaryOp unary_op = UnaryOp::Neg;
  BinaryOp binary_op = BinaryOp::Add;
  AssignOp assign_op = AssignOp::Assign;
  std::vector<Expr> kids;
  int line = 0;

  static Expr int_lit(std::int64_t v, int line = 0);
  static Expr bool_lit(bool v, int line = 0);
  static Expr ident(std::string name, int line = 0);
  static Expr unary(UnaryOp op, Expr operand);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr assign(AssignOp op, std::string target, Expr value);
  static Expr call(std::string callee, std::vector<Expr> args, int line = 0);
  static Expr comma(std::vector<Expr> parts);

  bool is(ExprKind k) const { return kind == k; }
  bool is_unary(UnaryOp op) const { return kind == ExprKind::Unary && unary_op == op; }
  bool is_binary(BinaryOp op) const { return kind == ExprKind::Binary && binary_op == op; }
  bool is_literal() const;

  const Expr& lhs() const { return kids[0]; }
  const Expr& rhs() const { return kids[1]; }
  const Expr& operand() const { return kids[0]; }
};

// Structural equality; source lines are ignored.
bool operator==(const Expr& a, const Expr& b);

// ---------------------------------------------------------------------------
// Types

enum class BaseType { Char, Int, Long, Float, Double, Void };
enum class Signedness { Unspecified, Signed, Unsigned };

/// A scalar type. `words` keeps the keywords as written so a disguised
/// spelling survives a round trip; equality of types ignores it.
struct TypeSpec {
  BaseType base = BaseType::Int;
  Signedness sign = Signedness::Unspecified;
  std::vector<std::string> words;

  static TypeSpec of(BaseType base, Signedness sign = Signedness::Unspecified);

  /// `long`, `unsigned long`, `signed char`, ... The canonical spelling drops
  /// a redundant `signed` everywhere except on `char`.
  std::string canonical_spelling() const;
  std::string written_spelling() const;
  bool same_type(const TypeSpec& other) const;
  TypeSpec canonical() const;
};

bool operator==(const TypeSpec& a, const TypeSpec& b);

// ---------------------------------------------------------------------------
// Statements

struct Stmt;

struct Declarator {
  std::string name;
  std::optional<Expr> init;
  friend bool operator==(const Declarator&, const Declarator&) = default;
};

/// One `case` (label set) or `default` (label empty) arm with the statements
/// up to the next arm. Fallthrough is kept as written.
struct SwitchCase {
  std::optional<Expr> label;
  std::vector<Stmt> body;
  int line = 0;
};

enum class StmtKind {
  Expr,
  Decl,
  Block,
  If,
  While,
  DoWhile,
  For,
  Switch,
  Break,
  Continue,
  Return,
};

/// Statement node.
///
/// Field use by kind:
///   Expr      expr
///   Decl      type, decls (one or more declarators)
///   Block     body (statements)
///   If        expr (condition), body[0] (then), body[1] (optional else)
///   While     expr (condition), body[0]
///   DoWhile   expr (condition), body[0]
///   For       init (0 or 1 Expr/Decl statement), expr (optional
///             condition), step (optional), body[0]
///   Switch    expr (scrutinee), cases
///   Return    expr (optional)
struct Stmt {
  StmtKind kind = StmtKind::Block;
  std::optional<Expr> expr;
  std::optional<Expr> step;
  TypeSpec type;
  std::vector<Declarator> decls;
  std::vector<Stmt> init;
  std::vector<Stmt> body;
  std::vector<SwitchCase> cases;
  int line = 0;

  static Stmt expression(Expr e);
  static Stmt declaration(TypeSpec type, std::vector<Declarator> decls, int line = 0);
  static Stmt block(std::vector<Stmt> stmts, int line = 0);
  static Stmt if_(Expr cond, Stmt then, std::optional<Stmt> else_ = std::nullopt);
  static Stmt while_(Expr cond, Stmt body);
  static Stmt break_(int line = 0);
  static Stmt continue_(int line = 0);
  static Stmt return_(std::optional<Expr> value, int line = 0);

  bool is(StmtKind k) const { return kind == k; }
  bool has_else() const { return kind == StmtKind::If && body.size() > 1; }
  Stmt& then_branch() { return body[0]; }
  const Stmt& then_branch() const { return body[0]; }
  Stmt& else_branch() { return body[1]; }
  const Stmt& else_branch() const { return body[1]; }
  Stmt& loop_body() { return body[0]; }
  const Stmt& loop_body() const { return body[0]; }
};

bool operator==(const SwitchCase& a, const SwitchCase& b);
bool operator==(const Stmt& a, const Stmt& b);

struct Param {
  TypeSpec type;
  std::string name;
  friend bool operator==(const Param&, const Param&) = default;
};

struct FunctionDef {
  TypeSpec return_type;
  std::string name;
  std::vector<Param> params;
  Stmt body;  // always a Block
  int line = 0;
};

bool operator==(const FunctionDef& a, const FunctionDef& b);

struct TranslationUnit {
  std::vector<Stmt> globals;  // Decl statements
  std::vector<FunctionDef> functions;

  const FunctionDef* find_function(std::string_view name) const;
};

bool operator==(const TranslationUnit& a, const TranslationUnit& b);

}  // namespace canonc
