#include "loopmatch/prelude.hpp"

#include "loopmatch/common.hpp"
#include "loopmatch/interp.hpp"
#include "loopmatch/parser.hpp"

namespace loopmatch {

const char* embedded_prelude_text();  // prelude_text.cpp, generated

const char* prelude_source() { return embedded_prelude_text(); }

const std::vector<std::string>& prelude_exports() {
  static const std::vector<std::string> names = {
      "integer", "bool", "string", "splits",      "list", "multiset", "set",
      "map",     "take", "drop",   "comb",        "twin-primes"};
  return names;
}

void load_prelude(Interp& interp) {
  std::vector<TopForm> forms;
  try {
    forms = parse_program(prelude_source());
  } catch (const Error& e) {
    throw EvalError(std::string("prelude failed to parse: ") + e.what());
  }
  std::string current = "?";
  try {
    for (TopForm& form : forms) {
      if (!form.is_define())
        throw EvalError("prelude may only contain defines", form.pos);
      current = form.define_name;
      interp.define(form.define_name, form.expr);
    }
  } catch (const Error& e) {
    throw EvalError("prelude definition '" + current + "' failed: " + e.what());
  }
}

}  // namespace loopmatch
