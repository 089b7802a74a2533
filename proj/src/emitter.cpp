#include "canonc/emitter.hpp"

namespace canonc {

namespace {

constexpr int kCommaPrec = 1;
constexpr int kAssignPrec = 2;
constexpr int kUnaryPrec = 14;
constexpr int kPostfixPrec = 15;
constexpr int kPrimaryPrec = 16;

int expr_prec(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Comma: return kCommaPrec;
    case ExprKind::Assign: return kAssignPrec;
    case ExprKind::Binary: return precedence(e.binary_op);
    case ExprKind::Unary:
      return e.unary_op == UnaryOp::PostInc || e.unary_op == UnaryOp::PostDec ? kPostfixPrec
                                                                               : kUnaryPrec;
    case ExprKind::Call: return kPostfixPrec;
    case ExprKind::IntLit: return e.value < 0 ? kUnaryPrec : kPrimaryPrec;
    default: return kPrimaryPrec;
  }
}

class ExprPrinter {
 public:
  std::string out;

  void print(const Expr& e, int min_prec) {
    bool parens = expr_prec(e) < min_prec;
    if (parens) out += '(';
    body(e);
    if (parens) out += ')';
  }

 private:
  void body(const Expr& e) {
    switch (e.kind) {
      case ExprKind::IntLit:
        if (e.value < 0) {
          out += '-';
          out += std::to_string(0 - static_cast<std::uint64_t>(e.value));
        } else {
          out += std::to_string(e.value);
        }
        break;
      case ExprKind::BoolLit: out += e.value ? "true" : "false"; break;
      case ExprKind::CharLit:
      case ExprKind::FloatLit:
      case ExprKind::StringLit:
      case ExprKind::Ident: out += e.text; break;
      case ExprKind::Unary: {
        const Expr& x = e.operand();
        if (e.unary_op == UnaryOp::PostInc || e.unary_op == UnaryOp::PostDec) {
          print(x, kPostfixPrec);
          out += spelling(e.unary_op);
          break;
        }
        out += spelling(e.unary_op);
        // `- -x` and `- --x` must not fuse into a decrement token.
        bool fuse = (e.unary_op == UnaryOp::Neg || e.unary_op == UnaryOp::PreDec) &&
                    ((x.is(ExprKind::Unary) &&
                      (x.unary_op == UnaryOp::Neg || x.unary_op == UnaryOp::PreDec)) ||
                     (x.is(ExprKind::IntLit) && x.value < 0));
        if (fuse) {
          out += '(';
          body(x);
          out += ')';
        } else {
          print(x, kUnaryPrec);
        }
        break;
      }
      case ExprKind::Binary: {
        int p = precedence(e.binary_op);
        print(e.lhs(), p);
        out += ' ';
        out += spelling(e.binary_op);
        out += ' ';
        print(e.rhs(), p + 1);
        break;
      }
      case ExprKind::Assign:
        out += e.text;
        out += ' ';
        out += spelling(e.assign_op);
        out += ' ';
        print(e.kids[0], kAssignPrec);
        break;
      case ExprKind::Call:
        out += e.text;
        out += '(';
        for (std::size_t i = 0; i < e.kids.size(); ++i) {
          if (i) out += ", ";
          print(e.kids[i], kAssignPrec);
        }
        out += ')';
        break;
      case ExprKind::Comma:
        for (std::size_t i = 0; i < e.kids.size(); ++i) {
          if (i) out += ", ";
          print(e.kids[i], kAssignPrec);
        }
        break;
    }
  }
};

class StmtPrinter {
 public:
  std::string out;

  void line(int indent, const std::string& text) {
    out.append(static_cast<std::size_t>(indent) * 4, ' ');
    out += text;
    out += '\n';
  }

  static std::string decl_text(const Stmt& s) {
    std::string t = s.type.written_spelling() + " ";
    for (std::size_t i = 0; i < s.decls.size(); ++i) {
      if (i) t += ", ";
      t += s.decls[i].name;
      if (s.decls[i].init) t += " = " + emit(*s.decls[i].init);
    }
    return t + ";";
  }

  // Prints `head` followed by the statement as a body: braces stay on the
  // head line for blocks, other statements go on the next line, indented.
  // Returns true when the body was braced (so a trailing `else`/`while` can
  // continue the closing-brace line). `continued` means the head goes on the
  // current line rather than a fresh indented one.
  bool headed(int indent, const std::string& head, const Stmt& body, bool continued = false,
              bool force_braces = false) {
    if (!continued) out.append(static_cast<std::size_t>(indent) * 4, ' ');
    if (body.is(StmtKind::Block) || force_braces) {
      out += head + " {\n";
      if (body.is(StmtKind::Block)) {
        for (const Stmt& s : body.body) print(s, indent + 1);
      } else {
        print(body, indent + 1);
      }
      out.append(static_cast<std::size_t>(indent) * 4, ' ');
      out += "}";
      return true;
    }
    out += head + "\n";
    print(body, indent + 1);
    return false;
  }

  // True when an `else` printed after `s` would bind to an if inside it.
  static bool dangling(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::If: return !s.has_else() || dangling(s.else_branch());
      case StmtKind::While:
      case StmtKind::For: return dangling(s.loop_body());
      default: return false;
    }
  }

  void close(bool braced) {
    if (braced) out += '\n';
  }

  void print(const Stmt& s, int indent) {
    switch (s.kind) {
      case StmtKind::Expr: line(indent, emit(*s.expr) + ";"); break;
      case StmtKind::Decl: line(indent, decl_text(s)); break;
      case StmtKind::Block:
        line(indent, "{");
        for (const Stmt& c : s.body) print(c, indent + 1);
        line(indent, "}");
        break;
      case StmtKind::If: if_chain(s, indent, "if (" + emit(*s.expr) + ")"); break;
      case StmtKind::While: close(headed(indent, "while (" + emit(*s.expr) + ")", s.loop_body())); break;
      case StmtKind::DoWhile: {
        bool braced = headed(indent, "do", s.loop_body());
        std::string tail = "while (" + emit(*s.expr) + ");";
        if (braced) {
          out += " " + tail + "\n";
        } else {
          line(indent, tail);
        }
        break;
      }
      case StmtKind::For: {
        std::string head = "for (";
        if (!s.init.empty()) {
          const Stmt& i = s.init[0];
          head += i.is(StmtKind::Decl) ? decl_text(i) : emit(*i.expr) + ";";
        } else {
          head += ";";
        }
        if (s.expr) head += " " + emit(*s.expr);
        head += ";";
        if (s.step) head += " " + emit(*s.step);
        head += ")";
        close(headed(indent, head, s.loop_body()));
        break;
      }
      case StmtKind::Switch:
        line(indent, "switch (" + emit(*s.expr) + ") {");
        for (const SwitchCase& arm : s.cases) {
          line(indent, arm.label ? "case " + emit(*arm.label) + ":" : "default:");
          for (const Stmt& c : arm.body) print(c, indent + 1);
        }
        line(indent, "}");
        break;
      case StmtKind::Break: line(indent, "break;"); break;
      case StmtKind::Continue: line(indent, "continue;"); break;
      case StmtKind::Return: line(indent, s.expr ? "return " + emit(*s.expr) + ";" : "return;"); break;
    }
  }

  void if_chain(const Stmt& s, int indent, const std::string& head, bool continued = false) {
    const Stmt& then = s.then_branch();
    bool force = s.has_else() && dangling(then);
    bool braced = headed(indent, head, then, continued, force);
    if (!s.has_else()) {
      close(braced);
      return;
    }
    if (braced) {
      out += " ";
    } else {
      out.append(static_cast<std::size_t>(indent) * 4, ' ');
    }
    const Stmt& e = s.else_branch();
    if (e.is(StmtKind::If)) {
      if_chain(e, indent, "else if (" + emit(*e.expr) + ")", true);
      return;
    }
    if (e.is(StmtKind::Block)) {
      out += "else {\n";
      for (const Stmt& c : e.body) print(c, indent + 1);
      line(indent, "}");
      return;
    }
    out += "else\n";
    print(e, indent + 1);
  }
};

}  // namespace

std::string emit(const Expr& expr) {
  ExprPrinter p;
  p.print(expr, kCommaPrec);
  return p.out;
}

std::string emit(const Stmt& stmt, int indent) {
  StmtPrinter p;
  p.print(stmt, indent);
  return p.out;
}

std::string emit(const FunctionDef& fn) {
  std::string head = fn.return_type.written_spelling() + " " + fn.name + "(";
  for (std::size_t i = 0; i < fn.params.size(); ++i) {
    if (i) head += ", ";
    head += fn.params[i].type.written_spelling() + " " + fn.params[i].name;
  }
  head += ") {\n";
  StmtPrinter p;
  for (const Stmt& s : fn.body.body) p.print(s, 1);
  return head + p.out + "}\n";
}

std::string emit(const TranslationUnit& unit) {
  std::string out;
  for (const Stmt& g : unit.globals) out += emit(g);
  for (std::size_t i = 0; i < unit.functions.size(); ++i) {
    if (i || !unit.globals.empty()) out += '\n';
    out += emit(unit.functions[i]);
  }
  return out;
}

}  // namespace canonc
