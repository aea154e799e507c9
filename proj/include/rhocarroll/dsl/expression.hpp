#pragma once

#include <functional>
#include <string>
#include <variant>

#include "rhocarroll/carroll.hpp"
#include "rhocarroll/dsl/ast.hpp"

namespace rhoc::dsl {

using Value = std::variant<Element, Section, DerivationCombo>;

std::string render_value(const Value& v);

/// Names visible to an expression. Generators and parameters come from the
/// algebra; section names need `pair`, derivation names need `derivations`.
/// Calls G(u,v) and nabla(C,u,v) resolve through the lookups.
struct EvalContext {
  PresentationPtr algebra;
  PairPtr pair;
  DerivationBasisPtr derivations;
  std::function<const Metric*(const std::string&)> metric;
  std::function<const Connection*(const std::string&)> connection;
};

// Throws Error(Semantic) with the position of the offending node.
Value evaluate(const Expr& e, const EvalContext& ctx);
Element evaluate_element(const Expr& e, const EvalContext& ctx);
Section evaluate_section(const Expr& e, const EvalContext& ctx);
DerivationCombo evaluate_derivation(const Expr& e, const EvalContext& ctx);

// Convenience for tests and the CLI: parse then evaluate.
Value evaluate(std::string_view source, const EvalContext& ctx);

}  // namespace rhoc::dsl
