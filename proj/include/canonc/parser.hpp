#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "canonc/ast.hpp"
#include "canonc/lexer.hpp"

namespace canonc {

/// Recursive-descent parser for C-mini. Throws ParseError with code
/// "SyntaxError" or "UnsupportedConstruct" (address-of, dereference, arrays,
/// aggregates, typedef, goto, labels, casts, the conditional operator, ...).
/// Function prototypes are accepted and dropped.
TranslationUnit parse(std::span<const Token> tokens);

/// Post-parse checks: distinct function names, declared-before-use
/// identifiers, distinct constant case labels, break/continue placement, and
/// the reserved `__t` prefix (unless `allow_reserved`). Throws SemanticError.
void check_unit(const TranslationUnit& unit, bool allow_reserved = false);

/// tokenize + parse + check_unit.
TranslationUnit parse_source(std::string_view source, std::vector<Diagnostic>* warnings = nullptr);

/// Decoded value of a character literal spelling such as 'a' or '\n'.
std::int64_t char_literal_value(std::string_view spelling);

}  // namespace canonc
