#pragma once

#include <optional>
#include <string>

#include "loopmatch/value.hpp"

namespace loopmatch {

// Canonical printer; defines the output format used by the CLI and the golden
// tests. Collections print as {e1 e2 ...}, tuples as [e1 e2], inductive data
// as <Ctor a1 a2>, hashes as {|[k v] ...|} with keys ascending. When
// take_limit is set, each collection prints at most that many elements and
// marks truncation with a trailing "...".
std::string show(Interp& interp, const ValuePtr& v,
                 std::optional<std::int64_t> take_limit = std::nullopt);

}  // namespace loopmatch
