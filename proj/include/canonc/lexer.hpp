#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "canonc/errors.hpp"

namespace canonc {

enum class TokenKind {
  Keyword,
  Identifier,
  IntegerLiteral,
  FloatLiteral,
  CharLiteral,
  StringLiteral,
  Operator,
  Punctuation,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::Punctuation;
  std::string lexeme;
  int line = 1;
  int column = 1;

  bool is(TokenKind k, std::string_view text) const { return kind == k && lexeme == text; }
  bool is_op(std::string_view text) const { return kind == TokenKind::Operator && lexeme == text; }
  bool is_punct(std::string_view text) const {
    return kind == TokenKind::Punctuation && lexeme == text;
  }
  bool is_keyword(std::string_view text) const {
    return kind == TokenKind::Keyword && lexeme == text;
  }
  SourcePos pos() const { return {line, column}; }

  friend bool operator==(const Token&, const Token&) = default;
};

bool is_keyword(std::string_view word);

/// Splits C-mini source into tokens. Comments and whitespace are dropped;
/// preprocessor lines are skipped and reported through `warnings` when given.
/// Throws LexError (UnterminatedComment, UnterminatedLiteral,
/// InvalidCharacter) carrying the offending line and column.
std::vector<Token> tokenize(std::string_view source, std::vector<Diagnostic>* warnings = nullptr);

}  // namespace canonc
