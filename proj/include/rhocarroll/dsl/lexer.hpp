#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rhoc::dsl {

enum class TokenKind { Ident, Number, Symbol, Arrow, Newline, End };

struct Token {
  TokenKind kind;
  std::string text;
  int line = 1;
  int column = 1;
};

// Newlines are emitted only outside (), [] and {}, so blocks may span lines.
// '#' starts a comment running to the end of the line. Throws Error(Syntax).
std::vector<Token> lex(std::string_view source);

std::string describe(const Token& t);

}  // namespace rhoc::dsl
