#include <gtest/gtest.h>

#include "canonc/errors.hpp"
#include "canonc/lexer.hpp"

namespace canonc {
namespace {

std::vector<std::string> lexemes(std::string_view src) {
  std::vector<std::string> out;
  for (const Token& t : tokenize(src)) out.push_back(t.lexeme);
  return out;
}

TEST(Lexer, SplitsOperatorsGreedily) {
  EXPECT_EQ(lexemes("a<<=b>>c++&&d!=e"),
            (std::vector<std::string>{"a", "<<=", "b", ">>", "c", "++", "&&", "d", "!=", "e"}));
}

TEST(Lexer, ClassifiesTokens) {
  auto toks = tokenize("while (x1) return 'a' + 42 + 1.5;");
  ASSERT_EQ(toks.size(), 11u);
  EXPECT_EQ(toks[0].kind, TokenKind::Keyword);
  EXPECT_EQ(toks[1].kind, TokenKind::Punctuation);
  EXPECT_EQ(toks[2].kind, TokenKind::Identifier);
  EXPECT_EQ(toks[5].kind, TokenKind::CharLiteral);
  EXPECT_EQ(toks[7].kind, TokenKind::IntegerLiteral);
  EXPECT_EQ(toks[9].kind, TokenKind::FloatLiteral);
  EXPECT_TRUE(toks[6].is_op("+"));
}

TEST(Lexer, TracksLinesAndColumns) {
  auto toks = tokenize("a\n  bb // note\n/* x\n y */ c");
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_EQ(toks[1].line, 2);
  EXPECT_EQ(toks[1].column, 3);
  EXPECT_EQ(toks[2].line, 4);
  EXPECT_EQ(toks[2].column, 7);
}

TEST(Lexer, SkipsPreprocessorLinesWithWarning) {
  std::vector<Diagnostic> warnings;
  auto toks = tokenize("#include <stdio.h>\nlong x;\n", &warnings);
  EXPECT_EQ(toks.size(), 3u);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0].code, "PreprocessorLineIgnored");
  EXPECT_EQ(warnings[0].pos.line, 1);
}

TEST(Lexer, UnterminatedCommentReportsStart) {
  try {
    tokenize("long x;\n  /* open");
    FAIL() << "expected LexError";
  } catch (const LexError& e) {
    EXPECT_EQ(e.code(), "UnterminatedComment");
    EXPECT_EQ(e.pos().line, 2);
    EXPECT_EQ(e.pos().column, 3);
  }
}

TEST(Lexer, RejectsBadInput) {
  EXPECT_THROW(tokenize("x = 'a"), LexError);
  EXPECT_THROW(tokenize("x = \"abc"), LexError);
  EXPECT_THROW(tokenize("x @ y"), LexError);
}

TEST(Lexer, KeywordTable) {
  EXPECT_TRUE(is_keyword("while"));
  EXPECT_TRUE(is_keyword("unsigned"));
  EXPECT_FALSE(is_keyword("whilst"));
}

}  // namespace
}  // namespace canonc
