#include "loopmatch/interp.hpp"

#include "loopmatch/eval.hpp"
#include "loopmatch/parser.hpp"
#include "loopmatch/prelude.hpp"

namespace loopmatch {

Interp::Interp(const Options& options) {
  session_frame_ = std::make_shared<Frame>();
  session_env_ = env_extend(session_frame_, make_base_env());
  if (options.load_prelude) load_prelude(*this);
}

void Interp::define(const std::string& name, ExprPtr expr) {
  // The thunk captures the session environment itself, so definitions that
  // arrive later (including this one) are visible when the body runs.
  session_frame_->set(name, Thunk::of_expr(std::move(expr), session_env_));
}

std::vector<RunResult> Interp::run(std::string_view source) {
  std::vector<RunResult> results;
  for (TopForm& form : parse_program(source)) {
    if (form.is_define()) {
      define(form.define_name, form.expr);
      results.push_back({std::move(form), nullptr});
    } else {
      ValuePtr v = eval(*this, form.expr, session_env_);
      results.push_back({std::move(form), std::move(v)});
    }
  }
  return results;
}

ValuePtr Interp::eval_text(std::string_view source) {
  ExprPtr e = parse_expr_text(source);
  return eval(*this, e, session_env_);
}

}  // namespace loopmatch
