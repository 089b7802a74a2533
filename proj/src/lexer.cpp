#include "canonc/lexer.hpp"

#include <array>
#include <cctype>

namespace canonc {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::IntegerLiteral: return "integer-literal";
    case TokenKind::FloatLiteral: return "float-literal";
    case TokenKind::CharLiteral: return "char-literal";
    case TokenKind::StringLiteral: return "string-literal";
    case TokenKind::Operator: return "operator";
    case TokenKind::Punctuation: return "punctuation";
  }
  return "?";
}

namespace {

// Keywords outside C-mini are still reserved so the parser can name them in
// UnsupportedConstruct diagnostics.
constexpr std::array<std::string_view, 34> kKeywords = {
    "char",     "int",     "long",   "float",  "double",   "void",     "signed",
    "unsigned", "short",   "if",     "else",   "while",    "do",       "for",
    "switch",   "case",    "default", "break", "continue", "return",   "true",
    "false",    "typedef", "goto",   "struct", "union",    "enum",     "sizeof",
    "static",   "extern",  "const",  "volatile", "register", "auto",
};

// Longest first within each leading character.
constexpr std::array<std::string_view, 39> kOperators = {
    "<<=", ">>=", "...", "->", "++", "--", "+=", "-=", "*=", "/=", "%=",
    "&=",  "|=",  "^=",  "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
    "+",   "-",   "*",   "/",  "%",  "<",  ">",  "=",  "!",  "~",  "&",
    "|",   "^",   ".",   "[",  "]",  "?",
};

constexpr std::string_view kPunctuation = "(){};,:";

class Lexer {
 public:
  Lexer(std::string_view src, std::vector<Diagnostic>* warnings)
      : src_(src), warnings_(warnings) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    bool line_start = true;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        advance();
        line_start = true;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        advance();
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        skip_block_comment();
        continue;
      }
      if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      if (c == '#' && line_start) {
        skip_preprocessor_line();
        continue;
      }
      line_start = false;
      out.push_back(next_token());
    }
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& code, const std::string& msg, SourcePos at) {
    throw LexError(code, msg, at);
  }

  void skip_block_comment() {
    SourcePos start{line_, column_};
    advance();
    advance();
    while (pos_ < src_.size()) {
      if (src_[pos_] == '*' && peek(1) == '/') {
        advance();
        advance();
        return;
      }
      advance();
    }
    fail("UnterminatedComment", "unterminated /* comment", start);
  }

  void skip_preprocessor_line() {
    SourcePos start{line_, column_};
    std::size_t begin = pos_;
    while (pos_ < src_.size() && src_[pos_] != '\n') {
      if (src_[pos_] == '\\' && peek(1) == '\n') advance();
      advance();
    }
    if (warnings_) {
      std::string_view text = src_.substr(begin, pos_ - begin);
      warnings_->push_back({start, "PreprocessorLineIgnored",
                            "preprocessor line ignored: " + std::string(text)});
    }
  }

  Token make(TokenKind kind, std::size_t begin, SourcePos at) const {
    return Token{kind, std::string(src_.substr(begin, pos_ - begin)), at.line, at.column};
  }

  Token next_token() {
    SourcePos at{line_, column_};
    std::size_t begin = pos_;
    unsigned char c = static_cast<unsigned char>(src_[pos_]);

    if (std::isalpha(c) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        advance();
      Token t = make(TokenKind::Identifier, begin, at);
      if (is_keyword(t.lexeme)) t.kind = TokenKind::Keyword;
      return t;
    }
    if (std::isdigit(c) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))))
      return number(begin, at);
    if (c == '\'') return quoted('\'', TokenKind::CharLiteral, begin, at);
    if (c == '"') return quoted('"', TokenKind::StringLiteral, begin, at);

    if (kPunctuation.find(static_cast<char>(c)) != std::string_view::npos) {
      advance();
      return make(TokenKind::Punctuation, begin, at);
    }
    for (std::string_view op : kOperators) {
      if (src_.substr(pos_, op.size()) == op) {
        for (std::size_t i = 0; i < op.size(); ++i) advance();
        return make(TokenKind::Operator, begin, at);
      }
    }
    fail("InvalidCharacter", "invalid character in source", at);
  }

  Token number(std::size_t begin, SourcePos at) {
    bool is_float = false;
    auto digit = [&](bool hex) {
      unsigned char d = static_cast<unsigned char>(peek());
      return hex ? std::isxdigit(d) != 0 : std::isdigit(d) != 0;
    };
    bool hex = peek() == '0' && (peek(1) == 'x' || peek(1) == 'X');
    if (hex) {
      advance();
      advance();
      if (!digit(true)) fail("InvalidCharacter", "malformed hexadecimal literal", at);
      while (digit(true)) advance();
    } else {
      while (digit(false)) advance();
      if (peek() == '.') {
        is_float = true;
        advance();
        while (digit(false)) advance();
      }
      if (peek() == 'e' || peek() == 'E') {
        std::size_t save_pos = pos_;
        int save_col = column_;
        advance();
        if (peek() == '+' || peek() == '-') advance();
        if (digit(false)) {
          is_float = true;
          while (digit(false)) advance();
        } else {
          pos_ = save_pos;
          column_ = save_col;
        }
      }
    }
    if (is_float) {
      while (peek() == 'f' || peek() == 'F' || peek() == 'l' || peek() == 'L') advance();
    } else {
      while (peek() == 'u' || peek() == 'U' || peek() == 'l' || peek() == 'L') advance();
    }
    unsigned char tail = static_cast<unsigned char>(peek());
    if (std::isalnum(tail) || tail == '_' || tail == '.')
      fail("InvalidCharacter", "invalid suffix on numeric literal", {line_, column_});
    return make(is_float ? TokenKind::FloatLiteral : TokenKind::IntegerLiteral, begin, at);
  }

  Token quoted(char quote, TokenKind kind, std::size_t begin, SourcePos at) {
    advance();
    std::size_t chars = 0;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n')
        fail("UnterminatedLiteral",
             kind == TokenKind::CharLiteral ? "unterminated character literal"
                                            : "unterminated string literal",
             at);
      char c = src_[pos_];
      if (c == quote) {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (pos_ >= src_.size() || src_[pos_] == '\n')
          fail("UnterminatedLiteral", "unterminated literal", at);
      }
      advance();
      ++chars;
    }
    if (kind == TokenKind::CharLiteral && chars == 0)
      fail("InvalidCharacter", "empty character literal", at);
    return make(kind, begin, at);
  }

  std::string_view src_;
  std::vector<Diagnostic>* warnings_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

bool is_keyword(std::string_view word) {
  for (std::string_view k : kKeywords)
    if (k == word) return true;
  return false;
}

std::vector<Token> tokenize(std::string_view source, std::vector<Diagnostic>* warnings) {
  return Lexer(source, warnings).run();
}

std::string Diagnostic::format(const std::string& file) const {
  return file + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + code +
         ": " + message;
}

}  // namespace canonc
