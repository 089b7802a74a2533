#include "canonc/ast.hpp"

#include <algorithm>

namespace canonc {

std::string_view spelling(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "-";
    case UnaryOp::Not: return "!";
    case UnaryOp::BitNot: return "~";
    case UnaryOp::PreInc:
    case UnaryOp::PostInc: return "++";
    case UnaryOp::PreDec:
    case UnaryOp::PostDec: return "--";
  }
  return "?";
}

std::string_view spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::LogAnd: return "&&";
    case BinaryOp::LogOr: return "||";
    case BinaryOp::BitAnd: return "&";
    case BinaryOp::BitOr: return "|";
    case BinaryOp::BitXor: return "^";
    case BinaryOp::Shl: return "<<";
    case BinaryOp::Shr: return ">>";
  }
  return "?";
}

std::string_view spelling(AssignOp op) {
  switch (op) {
    case AssignOp::Assign: return "=";
    case AssignOp::Add: return "+=";
    case AssignOp::Sub: return "-=";
    case AssignOp::Mul: return "*=";
    case AssignOp::Div: return "/=";
    case AssignOp::Mod: return "%=";
    case AssignOp::And: return "&=";
    case AssignOp::Or: return "|=";
    case AssignOp::Xor: return "^=";
    case AssignOp::Shl: return "<<=";
    case AssignOp::Shr: return ">>=";
  }
  return "?";
}

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::LogOr: return 4;
    case BinaryOp::LogAnd: return 5;
    case BinaryOp::BitOr: return 6;
    case BinaryOp::BitXor: return 7;
    case BinaryOp::BitAnd: return 8;
    case BinaryOp::Eq:
    case BinaryOp::Ne: return 9;
    case BinaryOp::Lt:
    case BinaryOp::Gt:
    case BinaryOp::Le:
    case BinaryOp::Ge: return 10;
    case BinaryOp::Shl:
    case BinaryOp::Shr: return 11;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 12;
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod: return 13;
  }
  return 0;
}

BinaryOp compound_operator(AssignOp op) {
  switch (op) {
    case AssignOp::Add: return BinaryOp::Add;
    case AssignOp::Sub: return BinaryOp::Sub;
    case AssignOp::Mul: return BinaryOp::Mul;
    case AssignOp::Div: return BinaryOp::Div;
    case AssignOp::Mod: return BinaryOp::Mod;
    case AssignOp::And: return BinaryOp::BitAnd;
    case AssignOp::Or: return BinaryOp::BitOr;
    case AssignOp::Xor: return BinaryOp::BitXor;
    case AssignOp::Shl: return BinaryOp::Shl;
    case AssignOp::Shr: return BinaryOp::Shr;
    case AssignOp::Assign: break;
  }
  return BinaryOp::Add;
}

// ---------------------------------------------------------------------------

Expr Expr::int_lit(std::int64_t v, int line) {
  Expr e;
  e.kind = ExprKind::IntLit;
  e.value = v;
  e.line = line;
  return e;
}

Expr Expr::bool_lit(bool v, int line) {
  Expr e;
  e.kind = ExprKind::BoolLit;
  e.value = v ? 1 : 0;
  e.line = line;
  return e;
}

Expr Expr::ident(std::string name, int line) {
  Expr e;
  e.kind = ExprKind::Ident;
  e.text = std::move(name);
  e.line = line;
  return e;
}

Expr Expr::unary(UnaryOp op, Expr operand) {
  Expr e;
  e.kind = ExprKind::Unary;
  e.unary_op = op;
  e.line = operand.line;
  e.kids.push_back(std::move(operand));
  return e;
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = ExprKind::Binary;
  e.binary_op = op;
  e.line = lhs.line;
  e.kids.push_back(std::move(lhs));
  e.kids.push_back(std::move(rhs));
  return e;
}

Expr Expr::assign(AssignOp op, std::string target, Expr value) {
  Expr e;
  e.kind = ExprKind::Assign;
  e.assign_op = op;
  e.text = std::move(target);
  e.line = value.line;
  e.kids.push_back(std::move(value));
  return e;
}

Expr Expr::call(std::string callee, std::vector<Expr> args, int line) {
  Expr e;
  e.kind = ExprKind::Call;
  e.text = std::move(callee);
  e.kids = std::move(args);
  e.line = line;
  return e;
}

Expr Expr::comma(std::vector<Expr> parts) {
  Expr e;
  e.kind = ExprKind::Comma;
  e.line = parts.empty() ? 0 : parts.front().line;
  e.kids = std::move(parts);
  return e;
}

bool Expr::is_literal() const {
  switch (kind) {
    case ExprKind::IntLit:
    case ExprKind::CharLit:
    case ExprKind::FloatLit:
    case ExprKind::StringLit:
    case ExprKind::BoolLit: return true;
    default: return false;
  }
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::IntLit:
    case ExprKind::BoolLit: return a.value == b.value;
    case ExprKind::CharLit: return a.value == b.value && a.text == b.text;
    case ExprKind::FloatLit:
    case ExprKind::StringLit:
    case ExprKind::Ident: return a.text == b.text;
    case ExprKind::Unary: return a.unary_op == b.unary_op && a.kids == b.kids;
    case ExprKind::Binary: return a.binary_op == b.binary_op && a.kids == b.kids;
    case ExprKind::Assign:
      return a.assign_op == b.assign_op && a.text == b.text && a.kids == b.kids;
    case ExprKind::Call: return a.text == b.text && a.kids == b.kids;
    case ExprKind::Comma: return a.kids == b.kids;
  }
  return false;
}

// ---------------------------------------------------------------------------

TypeSpec TypeSpec::of(BaseType base, Signedness sign) {
  TypeSpec t;
  t.base = base;
  t.sign = sign;
  t.words = t.canonical().words;
  return t;
}

namespace {

const char* base_word(BaseType b) {
  switch (b) {
    case BaseType::Char: return "char";
    case BaseType::Int: return "int";
    case BaseType::Long: return "long";
    case BaseType::Float: return "float";
    case BaseType::Double: return "double";
    case BaseType::Void: return "void";
  }
  return "int";
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace

TypeSpec TypeSpec::canonical() const {
  TypeSpec t;
  t.base = base;
  t.sign = sign;
  if (sign == Signedness::Signed && base != BaseType::Char) t.sign = Signedness::Unspecified;
  if (t.sign == Signedness::Unsigned) t.words.push_back("unsigned");
  if (t.sign == Signedness::Signed) t.words.push_back("signed");
  t.words.push_back(base_word(base));
  return t;
}

std::string TypeSpec::canonical_spelling() const { return join(canonical().words); }

std::string TypeSpec::written_spelling() const {
  return words.empty() ? canonical_spelling() : join(words);
}

bool TypeSpec::same_type(const TypeSpec& other) const {
  return canonical_spelling() == other.canonical_spelling();
}

bool operator==(const TypeSpec& a, const TypeSpec& b) {
  return a.base == b.base && a.sign == b.sign && a.written_spelling() == b.written_spelling();
}

// ---------------------------------------------------------------------------

Stmt Stmt::expression(Expr e) {
  Stmt s;
  s.kind = StmtKind::Expr;
  s.line = e.line;
  s.expr = std::move(e);
  return s;
}

Stmt Stmt::declaration(TypeSpec type, std::vector<Declarator> decls, int line) {
  Stmt s;
  s.kind = StmtKind::Decl;
  s.type = std::move(type);
  s.decls = std::move(decls);
  s.line = line;
  return s;
}

Stmt Stmt::block(std::vector<Stmt> stmts, int line) {
  Stmt s;
  s.kind = StmtKind::Block;
  s.body = std::move(stmts);
  s.line = line;
  return s;
}

Stmt Stmt::if_(Expr cond, Stmt then, std::optional<Stmt> else_) {
  Stmt s;
  s.kind = StmtKind::If;
  s.line = cond.line;
  s.expr = std::move(cond);
  s.body.push_back(std::move(then));
  if (else_) s.body.push_back(std::move(*else_));
  return s;
}

Stmt Stmt::while_(Expr cond, Stmt body) {
  Stmt s;
  s.kind = StmtKind::While;
  s.line = cond.line;
  s.expr = std::move(cond);
  s.body.push_back(std::move(body));
  return s;
}

Stmt Stmt::break_(int line) {
  Stmt s;
  s.kind = StmtKind::Break;
  s.line = line;
  return s;
}

Stmt Stmt::continue_(int line) {
  Stmt s;
  s.kind = StmtKind::Continue;
  s.line = line;
  return s;
}

Stmt Stmt::return_(std::optional<Expr> value, int line) {
  Stmt s;
  s.kind = StmtKind::Return;
  s.expr = std::move(value);
  s.line = line;
  return s;
}

bool operator==(const SwitchCase& a, const SwitchCase& b) {
  return a.label == b.label && a.body == b.body;
}

bool operator==(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == StmtKind::Decl && !(a.type == b.type)) return false;
  return a.expr == b.expr && a.step == b.step && a.decls == b.decls && a.init == b.init &&
         a.body == b.body && a.cases == b.cases;
}

bool operator==(const FunctionDef& a, const FunctionDef& b) {
  return a.return_type == b.return_type && a.name == b.name && a.params == b.params &&
         a.body == b.body;
}

const FunctionDef* TranslationUnit::find_function(std::string_view name) const {
  auto it = std::find_if(functions.begin(), functions.end(),
                         [&](const FunctionDef& f) { return f.name == name; });
  return it == functions.end() ? nullptr : &*it;
}

bool operator==(const TranslationUnit& a, const TranslationUnit& b) {
  return a.globals == b.globals && a.functions == b.functions;
}

}  // namespace canonc
