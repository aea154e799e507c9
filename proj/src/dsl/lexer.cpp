#include "rhocarroll/dsl/lexer.hpp"

#include <cctype>

#include "rhocarroll/error.hpp"

namespace rhoc::dsl {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }

}  // namespace

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  int depth = 0;
  std::size_t i = 0;
  auto push = [&](TokenKind k, std::string text, int l, int c) { out.push_back({k, std::move(text), l, c}); };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (c == '\n') {
      if (depth == 0 && (out.empty() || out.back().kind != TokenKind::Newline)) push(TokenKind::Newline, "\n", line, col);
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    const int l = line;
    const int start_col = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      push(TokenKind::Ident, std::string(src.substr(i, j - i)), l, start_col);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      push(TokenKind::Number, std::string(src.substr(i, j - i)), l, start_col);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      push(TokenKind::Arrow, "->", l, start_col);
      i += 2;
      col += 2;
      continue;
    }
    static constexpr std::string_view symbols = "+-*/^()[]{},;=:";
    if (symbols.find(c) == std::string_view::npos) {
      throw Error(ErrorCode::Syntax, "line " + std::to_string(l) + ", column " + std::to_string(start_col) +
                                         ": unexpected character '" + std::string(1, c) + "'");
    }
    if (c == '(' || c == '[' || c == '{') ++depth;
    if ((c == ')' || c == ']' || c == '}') && depth > 0) --depth;
    push(TokenKind::Symbol, std::string(1, c), l, start_col);
    ++i;
    ++col;
  }
  if (out.empty() || out.back().kind != TokenKind::Newline) push(TokenKind::Newline, "\n", line, col);
  push(TokenKind::End, "", line, col);
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::Newline: return "end of line";
    case TokenKind::End: return "end of input";
    default: return "'" + t.text + "'";
  }
}

}  // namespace rhoc::dsl
