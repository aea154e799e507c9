#include "rhocarroll/dsl/parser.hpp"

#include <set>
#include <sstream>

#include "rhocarroll/dsl/lexer.hpp"
#include "rhocarroll/error.hpp"

namespace rhoc::dsl {

namespace {

const std::set<std::string> kKeywords{"params",     "group", "factor",    "algebra", "generator", "derivation",
                                      "pair",       "metric", "connection", "carroll", "use",       "check",
                                      "eval",       "curvature", "torsion", "flow",    "levi_civita", "catalog",
                                      "report"};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(idx_ + ahead, toks_.size() - 1)]; }
  const Token& next() { return toks_[idx_ < toks_.size() - 1 ? idx_++ : idx_]; }

  bool at_symbol(char c) const { return peek().kind == TokenKind::Symbol && peek().text[0] == c; }
  bool at_ident(std::string_view s) const { return peek().kind == TokenKind::Ident && peek().text == s; }
  bool at_end_of_statement() const { return peek().kind == TokenKind::Newline || peek().kind == TokenKind::End; }

  [[noreturn]] void fail(std::set<std::string> expected) const {
    const Token& t = peek();
    std::string list;
    std::size_t k = 0;
    for (const auto& e : expected) {
      if (k > 0) list += (k + 1 == expected.size()) ? " or " : ", ";
      list += e;
      ++k;
    }
    throw Error(ErrorCode::Syntax, "line " + std::to_string(t.line) + ", column " + std::to_string(t.column) +
                                       ": expected " + list + ", found " + describe(t));
  }

  bool accept_symbol(char c) {
    if (!at_symbol(c)) return false;
    next();
    return true;
  }
  void expect_symbol(char c) {
    if (!accept_symbol(c)) fail({"'" + std::string(1, c) + "'"});
  }
  std::string expect_ident(const std::string& what = "identifier") {
    if (peek().kind != TokenKind::Ident) fail({what});
    return next().text;
  }
  void expect_arrow() {
    if (peek().kind != TokenKind::Arrow) fail({"'->'"});
    next();
  }
  long expect_int() {
    bool neg = accept_symbol('-');
    if (peek().kind != TokenKind::Number) fail({"integer"});
    const long v = std::stol(next().text);
    return neg ? -v : v;
  }
  void end_statement() {
    if (!at_end_of_statement()) fail({"end of line"});
    next();
  }

  // --- expressions ---------------------------------------------------------

  static ExprPtr make(Expr::Kind k, Pos p, std::vector<ExprPtr> args = {}, std::string text = {}, int exponent = 0) {
    return std::make_shared<const Expr>(Expr{k, std::move(text), std::move(args), exponent, p});
  }

  ExprPtr expression() {
    ExprPtr lhs = term();
    while (at_symbol('+') || at_symbol('-')) {
      const Token op = next();
      ExprPtr rhs = term();
      lhs = make(op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub, {op.line, op.column}, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (at_symbol('*') || at_symbol('/')) {
      const Token op = next();
      ExprPtr rhs = unary();
      lhs = make(op.text == "*" ? Expr::Kind::Mul : Expr::Kind::Div, {op.line, op.column}, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr unary() {
    if (at_symbol('-')) {
      const Token op = next();
      return make(Expr::Kind::Neg, {op.line, op.column}, {unary()});
    }
    ExprPtr base = primary();
    if (at_symbol('^')) {
      const Token op = next();
      const long e = expect_int();
      return make(Expr::Kind::Pow, {op.line, op.column}, {base}, {}, static_cast<int>(e));
    }
    return base;
  }

  ExprPtr primary() {
    const Token& t = peek();
    if (t.kind == TokenKind::Number) {
      next();
      return make(Expr::Kind::Number, {t.line, t.column}, {}, t.text);
    }
    if (t.kind == TokenKind::Ident) {
      const Token name = next();
      // A call needs the parenthesis directly after the name.
      if (at_symbol('(') && peek().line == name.line &&
          peek().column == name.column + static_cast<int>(name.text.size())) {
        next();
        std::vector<ExprPtr> args;
        if (!at_symbol(')')) {
          args.push_back(expression());
          while (accept_symbol(',')) args.push_back(expression());
        }
        expect_symbol(')');
        return make(Expr::Kind::Call, {name.line, name.column}, std::move(args), name.text);
      }
      return make(Expr::Kind::Name, {name.line, name.column}, {}, name.text);
    }
    if (at_symbol('(')) {
      next();
      ExprPtr inner = expression();
      expect_symbol(')');
      return inner;
    }
    fail({"number", "identifier", "'('", "'-'"});
  }

  // --- literals --------------------------------------------------------------

  DegreeLit degree() {
    DegreeLit d;
    expect_symbol('(');
    d.push_back(static_cast<int>(expect_int()));
    while (accept_symbol(',')) d.push_back(static_cast<int>(expect_int()));
    expect_symbol(')');
    return d;
  }

  IntMatrixLit matrix() {
    IntMatrixLit m;
    expect_symbol('[');
    do {
      std::vector<long> row;
      expect_symbol('[');
      row.push_back(expect_int());
      while (accept_symbol(',')) row.push_back(expect_int());
      expect_symbol(']');
      m.push_back(std::move(row));
    } while (accept_symbol(','));
    expect_symbol(']');
    return m;
  }

  OptionValue option_value(const std::string& key) {
    if (key == "deg") return degree();
    if (key == "q_form" || key == "sign_form") return matrix();
    if (key == "sigma") return expression();
    if (key == "order" || key == "samples" || key == "seed") return expect_int();
    if (at_ident("true")) {
      next();
      return true;
    }
    if (at_ident("false")) {
      next();
      return false;
    }
    if (peek().kind == TokenKind::Number || at_symbol('-')) return expect_int();
    return expect_ident("value");
  }

  // key=value pairs and bare flags until the end of the statement or '{'.
  void options(Statement& s) {
    while (peek().kind == TokenKind::Ident) {
      const std::string key = next().text;
      if (accept_symbol('=')) {
        s.options[key] = option_value(key);
      } else {
        s.options[key] = true;
      }
    }
  }

  // --- statements ------------------------------------------------------------

  Statement statement() {
    const Token kw = peek();
    if (kw.kind != TokenKind::Ident || !kKeywords.count(kw.text)) fail({"statement keyword"});
    next();
    Statement s;
    s.keyword = kw.text;
    s.pos = {kw.line, kw.column};
    const std::string& k = s.keyword;
    if (k == "params" || k == "use" || k == "catalog" || k == "check") {
      while (peek().kind == TokenKind::Ident) s.words.push_back(next().text);
    } else if (k == "group") {
      group(s);
    } else if (k == "factor") {
      options(s);
    } else if (k == "algebra" || k == "generator" || k == "levi_civita") {
      s.name = expect_ident("name");
      options(s);
    } else if (k == "derivation") {
      s.name = expect_ident("derivation name");
      options(s);
      block(s, [&](BlockEntry& e) {
        e.kind = "map";
        e.keys.push_back(expect_ident("generator name"));
        expect_arrow();
        e.value = expression();
      });
    } else if (k == "pair") {
      s.name = expect_ident("pair name");
      block(s, [&](BlockEntry& e) { pair_entry(e); });
    } else if (k == "metric" || k == "connection") {
      s.name = expect_ident("name");
      if (at_ident("on")) {
        next();
        s.options["on"] = expect_ident("pair name");
      }
      block(s, [&](BlockEntry& e) {
        e.kind = "map";
        expect_symbol('(');
        e.keys.push_back(expect_ident("basis section"));
        expect_symbol(',');
        e.keys.push_back(expect_ident("basis section"));
        expect_symbol(')');
        expect_arrow();
        e.value = expression();
      });
    } else if (k == "carroll") {
      s.name = expect_ident("carroll name");
      expect_symbol('{');
      for (;;) {
        while (accept_symbol(';') || accept_symbol(',')) {
        }
        if (accept_symbol('}')) break;
        const std::string key = expect_ident("'pair', 'metric', 'sigma' or '}'");
        expect_symbol('=');
        s.options[key] = option_value(key);
      }
    } else if (k == "eval") {
      s.exprs.push_back(expression());
    } else if (k == "curvature" || k == "torsion") {
      s.name = expect_ident("connection name");
      expect_symbol('(');
      s.exprs.push_back(expression());
      while (accept_symbol(',')) s.exprs.push_back(expression());
      expect_symbol(')');
    } else if (k == "flow") {
      s.exprs.push_back(expression());
      s.exprs.push_back(expression());
      options(s);
    }
    end_statement();
    return s;
  }

  void group(Statement& s) {
    long free = 0;
    long torsion = 0;
    do {
      const std::string g = expect_ident("'Z' or 'Z2'");
      long power = 1;
      if (accept_symbol('^')) power = expect_int();
      if (g == "Z") {
        free += power;
      } else if (g == "Z2") {
        torsion += power;
      } else {
        --idx_;
        fail({"'Z'", "'Z2'"});
      }
    } while ((at_ident("x") && (next(), true)) || accept_symbol('+'));
    s.options["free"] = free;
    s.options["torsion"] = torsion;
  }

  template <class Fn>
  void block(Statement& s, Fn&& entry) {
    expect_symbol('{');
    for (;;) {
      while (accept_symbol(';') || accept_symbol(',')) {
      }
      if (accept_symbol('}')) break;
      BlockEntry e;
      e.pos = {peek().line, peek().column};
      entry(e);
      s.entries.push_back(std::move(e));
    }
  }

  void pair_entry(BlockEntry& e) {
    if (at_ident("basis")) {
      next();
      e.kind = "basis";
      e.keys.push_back(expect_ident("section name"));
      if (at_ident("deg")) {
        next();
        expect_symbol('=');
        e.degree = degree();
      }
    } else if (at_ident("anchor")) {
      next();
      e.kind = "anchor";
      e.keys.push_back(expect_ident("section name"));
      expect_arrow();
      e.value = expression();
    } else if (at_ident("bracket")) {
      next();
      e.kind = "bracket";
      expect_symbol('[');
      e.keys.push_back(expect_ident("section name"));
      expect_symbol(',');
      e.keys.push_back(expect_ident("section name"));
      expect_symbol(']');
      expect_arrow();
      e.value = expression();
    } else {
      fail({"'basis'", "'anchor'", "'bracket'", "'}'"});
    }
  }

  SessionAst session(std::string_view source) {
    std::vector<std::string> lines;
    {
      std::istringstream in{std::string(source)};
      std::string l;
      while (std::getline(in, l)) lines.push_back(l);
    }
    SessionAst ast;
    for (;;) {
      while (peek().kind == TokenKind::Newline) next();
      if (peek().kind == TokenKind::End) break;
      const int first = peek().line;
      Statement s = statement();
      const int last = toks_[idx_ - 1].line;
      for (int l = first; l <= last && l <= static_cast<int>(lines.size()); ++l) {
        if (!s.source.empty()) s.source += "\n";
        s.source += lines[static_cast<std::size_t>(l - 1)];
      }
      ast.statements.push_back(std::move(s));
    }
    return ast;
  }

  std::size_t index() const { return idx_; }

 private:
  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string render_at(const Expr& e, int min) {
  std::string s = render(e);
  return precedence(e) < min ? "(" + s + ")" : s;
}

}  // namespace

std::string render(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
    case Expr::Kind::Name: return e.text;
    case Expr::Kind::Add: return render_at(*e.args[0], 1) + " + " + render_at(*e.args[1], 2);
    case Expr::Kind::Sub: return render_at(*e.args[0], 1) + " - " + render_at(*e.args[1], 2);
    case Expr::Kind::Mul: return render_at(*e.args[0], 2) + "*" + render_at(*e.args[1], 3);
    case Expr::Kind::Div: return render_at(*e.args[0], 2) + "/" + render_at(*e.args[1], 3);
    case Expr::Kind::Neg: return "-" + render_at(*e.args[0], 3);
    case Expr::Kind::Pow: return render_at(*e.args[0], 5) + "^" + std::to_string(e.exponent);
    case Expr::Kind::Call: {
      std::string s = e.text + "(";
      for (std::size_t k = 0; k < e.args.size(); ++k) {
        if (k > 0) s += ", ";
        s += render(*e.args[k]);
      }
      return s + ")";
    }
  }
  return {};
}

bool same_shape(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.text != b.text || a.exponent != b.exponent || a.args.size() != b.args.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.args.size(); ++k) {
    if (!same_shape(*a.args[k], *b.args[k])) return false;
  }
  return true;
}

SessionAst parse(std::string_view source) {
  Parser p(lex(source));
  return p.session(source);
}

ExprPtr parse_expression(std::string_view source) {
  Parser p(lex(source));
  ExprPtr e = p.expression();
  while (p.peek().kind == TokenKind::Newline) p.next();
  if (p.peek().kind != TokenKind::End) p.fail({"operator", "end of input"});
  return e;
}

}  // namespace rhoc::dsl
