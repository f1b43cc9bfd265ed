#pragma once

#include <string_view>
#include <vector>

#include "loopmatch/ast.hpp"

namespace loopmatch {

// Parses a whole program into top-level forms. Patterns inside match forms
// are validated (ellipsis discipline) as they are parsed.
std::vector<TopForm> parse_program(std::string_view source);

// Parses exactly one expression; trailing tokens are an error.
ExprPtr parse_expr_text(std::string_view source);

// Parses exactly one pattern (test helper).
PatternPtr parse_pattern_text(std::string_view source);

}  // namespace loopmatch
