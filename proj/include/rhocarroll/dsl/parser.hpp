#pragma once

#include <string_view>

#include "rhocarroll/dsl/ast.hpp"

namespace rhoc::dsl {

// Throws Error(Syntax) as "line L, column C: expected A, B or C, found X".
SessionAst parse(std::string_view source);
ExprPtr parse_expression(std::string_view source);

}  // namespace rhoc::dsl
