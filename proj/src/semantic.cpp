#include <set>
#include <string>
#include <vector>
#include <utility>

#include "canonc/parser.hpp"

namespace canonc {

namespace {

constexpr std::string_view kReservedPrefix = "__t";

class Checker {
 public:
  explicit Checker(bool allow_reserved) : allow_reserved_(allow_reserved) {}

  void run(const TranslationUnit& unit) {
    scopes_.emplace_back();
    for (const Stmt& g : unit.globals) declaration(g, /*global=*/true);

    std::set<std::string> names;
    for (const FunctionDef& f : unit.functions) {
      reserved(f.name, f.line);
      if (!names.insert(f.name).second)
        throw SemanticError("DuplicateFunction", "function '" + f.name + "' defined twice",
                            {f.line, 1});
    }
    for (const FunctionDef& f : unit.functions) {
      scopes_.emplace_back();
      for (const Param& p : f.params) declare(p.name, f.line);
      loops_ = switches_ = 0;
      for (const Stmt& s : f.body.body) statement(s);
      scopes_.pop_back();
    }
  }

 private:
  void reserved(const std::string& name, int line) const {
    if (!allow_reserved_ && name.starts_with(kReservedPrefix))
      throw SemanticError("ReservedIdentifier",
                          "identifier '" + name + "' uses the reserved prefix __t", {line, 1});
  }

  void declare(const std::string& name, int line) {
    reserved(name, line);
    if (!scopes_.back().insert(name).second && scopes_.size() > 1)
      throw SemanticError("Redeclaration", "'" + name + "' redeclared in the same scope",
                          {line, 1});
  }

  bool visible(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
      if (it->count(name)) return true;
    return false;
  }

  void use(const std::string& name, int line) const {
    if (!visible(name))
      throw SemanticError("UndeclaredIdentifier", "use of undeclared identifier '" + name + "'",
                          {line, 1});
  }

  void expression(const Expr& e) {
    switch (e.kind) {
      case ExprKind::Ident: use(e.text, e.line); break;
      case ExprKind::Assign: use(e.text, e.line); break;
      default: break;
    }
    for (const Expr& k : e.kids) expression(k);
  }

  void declaration(const Stmt& s, bool global = false) {
    for (const Declarator& d : s.decls) {
      if (d.init) expression(*d.init);
      if (global) {
        reserved(d.name, s.line);
        scopes_.front().insert(d.name);
      } else {
        declare(d.name, s.line);
      }
    }
  }

  void scoped(const Stmt& s) {
    scopes_.emplace_back();
    statement(s);
    scopes_.pop_back();
  }

  void statement(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::Expr: expression(*s.expr); break;
      case StmtKind::Decl: declaration(s); break;
      case StmtKind::Block:
        scopes_.emplace_back();
        for (const Stmt& c : s.body) statement(c);
        scopes_.pop_back();
        break;
      case StmtKind::If:
        expression(*s.expr);
        for (const Stmt& c : s.body) scoped(c);
        break;
      case StmtKind::While:
      case StmtKind::DoWhile:
        expression(*s.expr);
        ++loops_;
        scoped(s.loop_body());
        --loops_;
        break;
      case StmtKind::For:
        scopes_.emplace_back();
        for (const Stmt& i : s.init) statement(i);
        if (s.expr) expression(*s.expr);
        if (s.step) expression(*s.step);
        ++loops_;
        scoped(s.loop_body());
        --loops_;
        scopes_.pop_back();
        break;
      case StmtKind::Switch: {
        expression(*s.expr);
        std::set<std::int64_t> labels;
        bool has_default = false;
        scopes_.emplace_back();
        ++switches_;
        for (const SwitchCase& arm : s.cases) {
          if (arm.label) {
            const Expr& l = *arm.label;
            std::int64_t v = l.is_unary(UnaryOp::Neg)
                                 ? static_cast<std::int64_t>(0 - static_cast<std::uint64_t>(
                                                                     l.operand().value))
                                 : l.value;
            if (!labels.insert(v).second)
              throw SemanticError("DuplicateCase", "duplicate case label", {arm.line, 1});
          } else if (std::exchange(has_default, true)) {
            throw SemanticError("DuplicateCase", "multiple default labels", {arm.line, 1});
          }
          for (const Stmt& c : arm.body) statement(c);
        }
        --switches_;
        scopes_.pop_back();
        break;
      }
      case StmtKind::Break:
        if (loops_ + switches_ == 0)
          throw SemanticError("MisplacedBreak", "break outside loop or switch", {s.line, 1});
        break;
      case StmtKind::Continue:
        if (loops_ == 0)
          throw SemanticError("MisplacedContinue", "continue outside loop", {s.line, 1});
        break;
      case StmtKind::Return:
        if (s.expr) expression(*s.expr);
        break;
    }
  }

  bool allow_reserved_;
  std::vector<std::set<std::string>> scopes_;
  int loops_ = 0;
  int switches_ = 0;
};

}  // namespace

void check_unit(const TranslationUnit& unit, bool allow_reserved) {
  Checker(allow_reserved).run(unit);
}

}  // namespace canonc
