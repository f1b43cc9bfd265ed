#pragma once

#include <string>
#include <vector>

namespace loopmatch {

class Interp;

// The standard matchers (integer, bool, string, list, multiset, set) and the
// pattern-matching library functions, written in the object language and
// embedded in the binary. Also shipped as prelude/prelude.egi.
const char* prelude_source();

// Names the prelude is expected to bind after loading.
const std::vector<std::string>& prelude_exports();

void load_prelude(Interp& interp);

}  // namespace loopmatch
