#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rhoc::dsl {

struct Pos {
  int line = 1;
  int column = 1;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Element/section/derivation expression. Number literals are
/// non-negative integers; rationals arise from Div.
struct Expr {
  enum class Kind { Number, Name, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind;
  std::string text;  // digits, name, or callee
  std::vector<ExprPtr> args;
  int exponent = 0;  // Pow
  Pos pos;
};

// Minimal-parenthesis rendering; parse(render(e)) is structurally e.
std::string render(const Expr& e);
bool same_shape(const Expr& a, const Expr& b);

using IntMatrixLit = std::vector<std::vector<long>>;
using DegreeLit = std::vector<int>;

using OptionValue = std::variant<std::string, long, DegreeLit, IntMatrixLit, ExprPtr, bool>;

/// One `head ... -> value` line inside a block.
struct BlockEntry {
  std::string kind;               // "basis", "anchor", "bracket", "map"
  std::vector<std::string> keys;  // generator, section names
  std::optional<DegreeLit> degree;
  ExprPtr value;
  Pos pos;
};

struct Statement {
  std::string keyword;
  Pos pos;
  std::string name;
  std::vector<std::string> words;
  std::map<std::string, OptionValue> options;
  std::vector<BlockEntry> entries;
  std::vector<ExprPtr> exprs;
  // Source text of the statement, for records.
  std::string source;
};

struct SessionAst {
  std::vector<Statement> statements;
};

}  // namespace rhoc::dsl
