#pragma once

#include "loopmatch/value.hpp"

namespace loopmatch {

// Evaluates an expression to weak head normal form. Collection elements,
// constructor arguments, and function arguments stay delayed.
ValuePtr eval(Interp& interp, const ExprPtr& expr, const EnvPtr& env);

ValuePtr apply(Interp& interp, const ValuePtr& fn, std::vector<ThunkPtr> args,
               SourcePos pos);

// Environment containing the host builtins and the built-in matcher
// `something`. Shared base of every session.
EnvPtr make_base_env();

}  // namespace loopmatch
