#include "canonc/parser.hpp"

#include <cctype>
#include <optional>

namespace canonc {

namespace {

std::optional<BinaryOp> binary_op_of(const Token& t) {
  if (t.kind != TokenKind::Operator) return std::nullopt;
  static const std::pair<std::string_view, BinaryOp> table[] = {
      {"+", BinaryOp::Add},     {"-", BinaryOp::Sub},    {"*", BinaryOp::Mul},
      {"/", BinaryOp::Div},     {"%", BinaryOp::Mod},    {"<", BinaryOp::Lt},
      {">", BinaryOp::Gt},      {"<=", BinaryOp::Le},    {">=", BinaryOp::Ge},
      {"==", BinaryOp::Eq},     {"!=", BinaryOp::Ne},    {"&&", BinaryOp::LogAnd},
      {"||", BinaryOp::LogOr},  {"&", BinaryOp::BitAnd}, {"|", BinaryOp::BitOr},
      {"^", BinaryOp::BitXor},  {"<<", BinaryOp::Shl},   {">>", BinaryOp::Shr},
  };
  for (const auto& [text, op] : table)
    if (t.lexeme == text) return op;
  return std::nullopt;
}

std::optional<AssignOp> assign_op_of(const Token& t) {
  if (t.kind != TokenKind::Operator) return std::nullopt;
  static const std::pair<std::string_view, AssignOp> table[] = {
      {"=", AssignOp::Assign}, {"+=", AssignOp::Add},  {"-=", AssignOp::Sub},
      {"*=", AssignOp::Mul},   {"/=", AssignOp::Div},  {"%=", AssignOp::Mod},
      {"&=", AssignOp::And},   {"|=", AssignOp::Or},   {"^=", AssignOp::Xor},
      {"<<=", AssignOp::Shl},  {">>=", AssignOp::Shr},
  };
  for (const auto& [text, op] : table)
    if (t.lexeme == text) return op;
  return std::nullopt;
}

bool is_type_word(const Token& t) {
  if (t.kind != TokenKind::Keyword) return false;
  static constexpr std::string_view words[] = {"char",   "int",    "long",   "float", "double",
                                               "void",   "signed", "unsigned", "short"};
  for (auto w : words)
    if (t.lexeme == w) return true;
  return false;
}

bool is_unsupported_keyword(const Token& t) {
  if (t.kind != TokenKind::Keyword) return false;
  static constexpr std::string_view words[] = {"typedef", "goto",   "struct",   "union",
                                               "enum",    "sizeof", "static",   "extern",
                                               "const",   "volatile", "register", "auto"};
  for (auto w : words)
    if (t.lexeme == w) return true;
  return false;
}

std::int64_t integer_value(std::string_view lexeme) {
  std::size_t end = lexeme.size();
  while (end > 0 && std::string_view("uUlL").find(lexeme[end - 1]) != std::string_view::npos)
    --end;
  std::string_view digits = lexeme.substr(0, end);
  unsigned base = 10;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
    base = 16;
    digits.remove_prefix(2);
  } else if (digits.size() > 1 && digits[0] == '0') {
    base = 8;
    digits.remove_prefix(1);
  }
  std::uint64_t v = 0;
  for (char c : digits) {
    unsigned d = std::isdigit(static_cast<unsigned char>(c))
                     ? static_cast<unsigned>(c - '0')
                     : static_cast<unsigned>(std::tolower(static_cast<unsigned char>(c)) - 'a' + 10);
    v = v * base + d;
  }
  return static_cast<std::int64_t>(v);
}

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : toks_(tokens) {}

  TranslationUnit unit() {
    TranslationUnit u;
    while (!at_end()) external(u);
    return u;
  }

 private:
  // -- token helpers --------------------------------------------------------

  bool at_end() const { return pos_ >= toks_.size(); }

  const Token& cur() const {
    static const Token eof{TokenKind::Punctuation, "<end of input>", 0, 0};
    if (at_end()) {
      if (toks_.empty()) return eof;
      static thread_local Token last;
      last = Token{TokenKind::Punctuation, "<end of input>", toks_.back().line,
                   toks_.back().column + static_cast<int>(toks_.back().lexeme.size())};
      return last;
    }
    return toks_[pos_];
  }

  const Token& look(std::size_t ahead) const {
    if (pos_ + ahead >= toks_.size()) return cur();
    return toks_[pos_ + ahead];
  }

  bool at_punct(std::string_view p) const { return !at_end() && cur().is_punct(p); }
  bool at_op(std::string_view p) const { return !at_end() && cur().is_op(p); }
  bool at_keyword(std::string_view k) const { return !at_end() && cur().is_keyword(k); }

  const Token& take() {
    const Token& t = cur();
    if (!at_end()) ++pos_;
    return t;
  }

  [[noreturn]] void syntax_error(std::string_view expected) const {
    const Token& t = cur();
    throw ParseError("SyntaxError",
                     "expected " + std::string(expected) + ", found '" + t.lexeme + "'", t.pos());
  }

  [[noreturn]] void unsupported(std::string_view what, const Token& at) const {
    throw ParseError("UnsupportedConstruct", std::string(what) + " is not supported in C-mini",
                     at.pos());
  }

  void expect_punct(std::string_view p) {
    if (!at_punct(p)) syntax_error("'" + std::string(p) + "'");
    take();
  }

  std::string expect_identifier() {
    if (at_end() || cur().kind != TokenKind::Identifier) {
      if (!at_end() && cur().is_op("*")) unsupported("pointer declarator", cur());
      syntax_error("identifier");
    }
    return take().lexeme;
  }

  void reject_unsupported_keyword() const {
    if (!at_end() && is_unsupported_keyword(cur())) unsupported("'" + cur().lexeme + "'", cur());
  }

  // -- declarations ---------------------------------------------------------

  TypeSpec type_spec() {
    reject_unsupported_keyword();
    const Token start = cur();
    TypeSpec t;
    int longs = 0, ints = 0, chars = 0, floats = 0, doubles = 0, voids = 0, signs = 0;
    while (!at_end() && is_type_word(cur())) {
      const std::string& w = cur().lexeme;
      if (w == "short") unsupported("'short'", cur());
      if (w == "long") ++longs;
      else if (w == "int") ++ints;
      else if (w == "char") ++chars;
      else if (w == "float") ++floats;
      else if (w == "double") ++doubles;
      else if (w == "void") ++voids;
      else {
        ++signs;
        t.sign = w == "signed" ? Signedness::Signed : Signedness::Unsigned;
      }
      t.words.push_back(w);
      take();
    }
    if (t.words.empty()) syntax_error("type specifier");
    int bases = (chars > 0) + (floats > 0) + (doubles > 0) + (voids > 0);
    bool bad = signs > 1 || ints > 1 || chars > 1 || floats > 1 || doubles > 1 || voids > 1 ||
               longs > 2 || bases > 1 || (bases == 1 && (ints > 0 || longs > 0)) ||
               (signs > 0 && (floats || doubles || voids));
    if (bad) throw ParseError("SyntaxError", "invalid type specifier", start.pos());
    if (chars) t.base = BaseType::Char;
    else if (floats) t.base = BaseType::Float;
    else if (doubles) t.base = BaseType::Double;
    else if (voids) t.base = BaseType::Void;
    else if (longs) t.base = BaseType::Long;
    else t.base = BaseType::Int;
    return t;
  }

  void reject_declarator_suffix() {
    if (at_op("[")) unsupported("array declarator", cur());
  }

  std::vector<Declarator> declarators() {
    std::vector<Declarator> out;
    while (true) {
      Declarator d;
      d.name = expect_identifier();
      reject_declarator_suffix();
      if (at_op("=")) {
        take();
        d.init = assignment();
      }
      out.push_back(std::move(d));
      if (!at_punct(",")) break;
      take();
    }
    expect_punct(";");
    return out;
  }

  void external(TranslationUnit& u) {
    const Token start = cur();
    TypeSpec type = type_spec();
    if (at_op("*")) unsupported("pointer declarator", cur());
    if (look(1).is_punct("(") && !at_end() && cur().kind == TokenKind::Identifier) {
      FunctionDef f;
      f.return_type = std::move(type);
      f.name = take().lexeme;
      f.line = start.line;
      take();  // (
      f.params = params();
      if (at_punct(";")) {  // prototype
        take();
        return;
      }
      if (!at_punct("{")) syntax_error("'{' or ';'");
      f.body = block();
      u.functions.push_back(std::move(f));
      return;
    }
    u.globals.push_back(Stmt::declaration(std::move(type), declarators(), start.line));
  }

  std::vector<Param> params() {
    std::vector<Param> out;
    if (at_punct(")")) {
      take();
      return out;
    }
    if (at_keyword("void") && look(1).is_punct(")")) {
      take();
      take();
      return out;
    }
    while (true) {
      if (at_op("...")) unsupported("variadic parameter list", cur());
      Param p;
      p.type = type_spec();
      p.name = expect_identifier();
      reject_declarator_suffix();
      out.push_back(std::move(p));
      if (at_punct(",")) {
        take();
        continue;
      }
      expect_punct(")");
      return out;
    }
  }

  // -- statements -----------------------------------------------------------

  Stmt block() {
    int line = cur().line;
    expect_punct("{");
    std::vector<Stmt> stmts;
    while (!at_punct("}")) {
      if (at_end()) syntax_error("'}'");
      stmts.push_back(statement());
    }
    take();
    return Stmt::block(std::move(stmts), line);
  }

  Expr paren_expr() {
    expect_punct("(");
    Expr e = expression();
    expect_punct(")");
    return e;
  }

  Stmt statement() {
    reject_unsupported_keyword();
    const Token& t = cur();
    int line = t.line;
    if (t.is_punct("{")) return block();
    if (t.is_punct(";")) {
      take();
      return Stmt::block({}, line);
    }
    if (is_type_word(t)) {
      TypeSpec type = type_spec();
      if (at_op("*")) unsupported("pointer declarator", cur());
      return Stmt::declaration(std::move(type), declarators(), line);
    }
    if (t.kind == TokenKind::Identifier && look(1).is_punct(":")) unsupported("label", t);
    if (t.kind == TokenKind::Keyword) {
      const std::string& k = t.lexeme;
      if (k == "if") {
        take();
        Expr cond = paren_expr();
        Stmt then = statement();
        std::optional<Stmt> otherwise;
        if (at_keyword("else")) {
          take();
          otherwise = statement();
        }
        Stmt s = Stmt::if_(std::move(cond), std::move(then), std::move(otherwise));
        s.line = line;
        return s;
      }
      if (k == "while") {
        take();
        Expr cond = paren_expr();
        Stmt s = Stmt::while_(std::move(cond), statement());
        s.line = line;
        return s;
      }
      if (k == "do") {
        take();
        Stmt s;
        s.kind = StmtKind::DoWhile;
        s.line = line;
        s.body.push_back(statement());
        if (!at_keyword("while")) syntax_error("'while'");
        take();
        s.expr = paren_expr();
        expect_punct(";");
        return s;
      }
      if (k == "for") return for_statement();
      if (k == "switch") return switch_statement();
      if (k == "break" || k == "continue") {
        take();
        expect_punct(";");
        return k == "break" ? Stmt::break_(line) : Stmt::continue_(line);
      }
      if (k == "return") {
        take();
        std::optional<Expr> value;
        if (!at_punct(";")) value = expression();
        expect_punct(";");
        return Stmt::return_(std::move(value), line);
      }
      if (k == "case" || k == "default") syntax_error("statement");
      if (k == "else") syntax_error("statement");
    }
    Stmt s = Stmt::expression(expression());
    s.line = line;
    expect_punct(";");
    return s;
  }

  Stmt for_statement() {
    Stmt s;
    s.kind = StmtKind::For;
    s.line = take().line;
    expect_punct("(");
    reject_unsupported_keyword();
    if (!at_end() && is_type_word(cur())) {
      int line = cur().line;
      TypeSpec type = type_spec();
      if (at_op("*")) unsupported("pointer declarator", cur());
      s.init.push_back(Stmt::declaration(std::move(type), declarators(), line));
    } else {
      if (!at_punct(";")) s.init.push_back(Stmt::expression(expression()));
      expect_punct(";");
    }
    if (!at_punct(";")) s.expr = expression();
    expect_punct(";");
    if (!at_punct(")")) s.step = expression();
    expect_punct(")");
    s.body.push_back(statement());
    return s;
  }

  Stmt switch_statement() {
    Stmt s;
    s.kind = StmtKind::Switch;
    s.line = take().line;
    s.expr = paren_expr();
    expect_punct("{");
    while (!at_punct("}")) {
      if (at_end()) syntax_error("'}'");
      SwitchCase arm;
      arm.line = cur().line;
      if (at_keyword("case")) {
        take();
        arm.label = case_label();
      } else if (at_keyword("default")) {
        take();
      } else {
        syntax_error("'case' or 'default'");
      }
      expect_punct(":");
      while (!at_punct("}") && !at_keyword("case") && !at_keyword("default")) {
        if (at_end()) syntax_error("'}'");
        arm.body.push_back(statement());
      }
      s.cases.push_back(std::move(arm));
    }
    take();
    return s;
  }

  Expr case_label() {
    const Token start = cur();
    Expr e = binary(4);
    bool constant = e.is(ExprKind::IntLit) || e.is(ExprKind::CharLit) ||
                    e.is(ExprKind::BoolLit) ||
                    (e.is_unary(UnaryOp::Neg) && e.operand().is(ExprKind::IntLit));
    if (!constant)
      throw ParseError("SyntaxError", "case label must be an integer or character constant",
                       start.pos());
    return e;
  }

  // -- expressions ----------------------------------------------------------

  Expr expression() {
    Expr first = assignment();
    if (!at_punct(",")) return first;
    std::vector<Expr> parts;
    parts.push_back(std::move(first));
    while (at_punct(",")) {
      take();
      parts.push_back(assignment());
    }
    return Expr::comma(std::move(parts));
  }

  Expr assignment() {
    const Token start = cur();
    Expr lhs = binary(4);
    if (at_op("?")) unsupported("conditional operator", cur());
    if (at_end()) return lhs;
    if (auto op = assign_op_of(cur())) {
      if (!lhs.is(ExprKind::Ident))
        throw ParseError("SyntaxError", "assignment target must be a scalar identifier",
                         start.pos());
      take();
      Expr value = assignment();
      Expr e = Expr::assign(*op, lhs.text, std::move(value));
      e.line = start.line;
      return e;
    }
    return lhs;
  }

  Expr binary(int min_prec) {
    Expr lhs = unary();
    while (!at_end()) {
      auto op = binary_op_of(cur());
      if (!op || precedence(*op) < min_prec) break;
      take();
      Expr rhs = binary(precedence(*op) + 1);
      lhs = Expr::binary(*op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr unary() {
    const Token& t = cur();
    if (t.kind == TokenKind::Operator) {
      if (t.lexeme == "&") unsupported("address-of operator", t);
      if (t.lexeme == "*") unsupported("dereference operator", t);
      std::optional<UnaryOp> op;
      if (t.lexeme == "-") op = UnaryOp::Neg;
      else if (t.lexeme == "!") op = UnaryOp::Not;
      else if (t.lexeme == "~") op = UnaryOp::BitNot;
      else if (t.lexeme == "++") op = UnaryOp::PreInc;
      else if (t.lexeme == "--") op = UnaryOp::PreDec;
      else if (t.lexeme == "+") {
        take();
        return unary();
      }
      if (op) {
        const Token start = take();
        Expr operand = unary();
        if ((*op == UnaryOp::PreInc || *op == UnaryOp::PreDec) && !operand.is(ExprKind::Ident))
          throw ParseError("SyntaxError", "operand of prefix ++/-- must be an identifier",
                           start.pos());
        Expr e = Expr::unary(*op, std::move(operand));
        e.line = start.line;
        return e;
      }
    }
    if (t.is_keyword("sizeof")) unsupported("'sizeof'", t);
    return postfix();
  }

  Expr postfix() {
    Expr e = primary();
    while (!at_end()) {
      const Token& t = cur();
      if (t.is_op("++") || t.is_op("--")) {
        if (!e.is(ExprKind::Ident))
          throw ParseError("SyntaxError", "operand of postfix ++/-- must be an identifier",
                           t.pos());
        take();
        e = Expr::unary(t.lexeme == "++" ? UnaryOp::PostInc : UnaryOp::PostDec, std::move(e));
        continue;
      }
      if (t.is_punct("(")) {
        if (!e.is(ExprKind::Ident))
          throw ParseError("UnsupportedConstruct", "call through a non-identifier is not supported",
                           t.pos());
        take();
        std::vector<Expr> args;
        if (!at_punct(")")) {
          while (true) {
            args.push_back(assignment());
            if (!at_punct(",")) break;
            take();
          }
        }
        expect_punct(")");
        e = Expr::call(e.text, std::move(args), e.line);
        continue;
      }
      if (t.is_op("[")) unsupported("array subscript", t);
      if (t.is_op(".") || t.is_op("->")) unsupported("member access", t);
      break;
    }
    return e;
  }

  Expr primary() {
    reject_unsupported_keyword();
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::IntegerLiteral: {
        take();
        return Expr::int_lit(integer_value(t.lexeme), t.line);
      }
      case TokenKind::FloatLiteral:
      case TokenKind::StringLiteral: {
        take();
        Expr e;
        e.kind = t.kind == TokenKind::FloatLiteral ? ExprKind::FloatLit : ExprKind::StringLit;
        e.text = t.lexeme;
        e.line = t.line;
        return e;
      }
      case TokenKind::CharLiteral: {
        take();
        Expr e;
        e.kind = ExprKind::CharLit;
        e.text = t.lexeme;
        e.value = char_literal_value(t.lexeme);
        e.line = t.line;
        return e;
      }
      case TokenKind::Identifier: {
        take();
        return Expr::ident(t.lexeme, t.line);
      }
      case TokenKind::Keyword:
        if (t.lexeme == "true" || t.lexeme == "false") {
          take();
          return Expr::bool_lit(t.lexeme == "true", t.line);
        }
        if (is_type_word(t)) unsupported("cast or type name in expression", t);
        break;
      case TokenKind::Punctuation:
        if (t.lexeme == "(") {
          if (is_type_word(look(1))) unsupported("cast", t);
          take();
          Expr e = expression();
          expect_punct(")");
          return e;
        }
        break;
      case TokenKind::Operator:
        if (t.lexeme == "[" || t.lexeme == "." || t.lexeme == "->")
          unsupported("'" + t.lexeme + "'", t);
        break;
    }
    syntax_error("expression");
  }

  std::span<const Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

std::int64_t char_literal_value(std::string_view s) {
  if (s.size() < 3) return 0;
  std::string_view body = s.substr(1, s.size() - 2);
  if (body[0] != '\\') return static_cast<unsigned char>(body[0]);
  if (body.size() < 2) return '\\';
  char c = body[1];
  switch (c) {
    case 'n': return '\n';
    case 't': return '\t';
    case 'r': return '\r';
    case 'a': return '\a';
    case 'b': return '\b';
    case 'f': return '\f';
    case 'v': return '\v';
    case 'x': {
      std::int64_t v = 0;
      for (char h : body.substr(2))
        v = v * 16 + (std::isdigit(static_cast<unsigned char>(h))
                          ? h - '0'
                          : std::tolower(static_cast<unsigned char>(h)) - 'a' + 10);
      return v & 0xFF;
    }
    default:
      if (c >= '0' && c <= '7') {
        std::int64_t v = 0;
        for (char o : body.substr(1)) v = v * 8 + (o - '0');
        return v & 0xFF;
      }
      return static_cast<unsigned char>(c);
  }
}

TranslationUnit parse(std::span<const Token> tokens) { return Parser(tokens).unit(); }

TranslationUnit parse_source(std::string_view source, std::vector<Diagnostic>* warnings) {
  auto tokens = tokenize(source, warnings);
  TranslationUnit unit = parse(tokens);
  check_unit(unit);
  return unit;
}

}  // namespace canonc
