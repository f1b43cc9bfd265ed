#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "loopmatch/ast.hpp"
#include "loopmatch/value.hpp"

namespace loopmatch {

struct Options {
  bool load_prelude = true;
};

struct EngineStats {
  std::uint64_t states_stepped = 0;
  std::uint64_t sweeps = 0;
  std::uint64_t results_emitted = 0;
  void reset() { *this = EngineStats{}; }
};

struct RunResult {
  TopForm form;
  ValuePtr value;  // null for defines
};

// One interpreter session: base builtins, a growing session frame for
// defines, and the engine instrumentation. Single-threaded.
class Interp {
 public:
  explicit Interp(const Options& options = {});

  // Parses and runs every top-level form; defines extend the session.
  std::vector<RunResult> run(std::string_view source);
  // Evaluates a single expression against the session environment.
  ValuePtr eval_text(std::string_view source);

  void define(const std::string& name, ExprPtr expr);
  EnvPtr session_env() const { return session_env_; }

  EngineStats stats;
  // (sweep index, vector count, results emitted this sweep)
  std::function<void(std::uint64_t, std::size_t, std::size_t)> trace;

 private:
  std::shared_ptr<Frame> session_frame_;
  EnvPtr session_env_;
};

}  // namespace loopmatch
