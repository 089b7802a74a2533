#pragma once

#include <string>

#include "canonc/ast.hpp"

namespace canonc {

/// Deterministic pretty printer: one statement per line, four-space indent,
/// opening braces on the same line, single spaces around binary operators and
/// the minimum parentheses the precedence rules require. Equal ASTs produce
/// byte-identical text.
std::string emit(const TranslationUnit& unit);
std::string emit(const FunctionDef& fn);
std::string emit(const Stmt& stmt, int indent = 0);
std::string emit(const Expr& expr);

}  // namespace canonc
