#pragma once

#include <deque>
#include <functional>
#include <optional>

#include "loopmatch/value.hpp"

namespace loopmatch {

// A matching atom: one pattern awaiting resolution against a matcher and a
// delayed target value.
struct MatchingAtom {
  PatternPtr pattern;
  ThunkPtr matcher;
  ThunkPtr target;
};

struct AtomNode {
  MatchingAtom atom;
  std::shared_ptr<const AtomNode> next;
};
using AtomsPtr = std::shared_ptr<const AtomNode>;
AtomsPtr atoms_push(MatchingAtom atom, AtomsPtr rest);

// Per-loop bookkeeping: the index variable's current value, the stream of
// remaining end numbers (ascending), and the loop's three patterns.
struct LoopContext {
  std::string index_name;
  std::int64_t index_value;
  ThunkPtr ends;
  PatternPtr end_num_pat;
  PatternPtr repeat_pat;
  PatternPtr end_pat;
  FramePtr index_frame;  // {index_name -> index_value}
};
using LoopCtxPtr = std::shared_ptr<const LoopContext>;

struct LoopNode {
  LoopCtxPtr ctx;
  std::shared_ptr<const LoopNode> next;
};
using LoopsPtr = std::shared_ptr<const LoopNode>;
LoopsPtr loops_push(LoopCtxPtr ctx, LoopsPtr rest);

// A state of the search: pending atoms, the environment the match-all was
// evaluated in, bindings accumulated so far, and the loop-context stack.
struct MatchingState {
  AtomsPtr atoms;
  EnvPtr gamma;
  FramePtr delta;
  LoopsPtr loops;
};

// Expressions inside patterns (value patterns, variable indices, loop ranges,
// let-pattern bindings) evaluate in gamma extended with delta and the index
// bindings of every loop context, inner contexts shadowing outer ones.
EnvPtr pattern_env(const MatchingState& state);

// A lazy sequence of matching states, consumed linearly by the scheduler.
class StateVector {
 public:
  explicit StateVector(std::function<std::optional<MatchingState>()> pull);
  static StateVector of(std::vector<MatchingState> states);
  static StateVector prepend(MatchingState head, StateVector tail);
  std::optional<MatchingState> pull() { return pull_(); }

 private:
  std::function<std::optional<MatchingState>()> pull_;
};

struct StepOutcome {
  std::optional<FramePtr> result;      // set when the state was terminal
  std::optional<StateVector> spawned;  // successor states, if any
};

// Resolves the head atom of a state one step.
StepOutcome step_state(Interp& interp, const MatchingState& state);

// The search scheduler. Each sweep steps the head of every vector once; a
// stepped vector's spawned successors re-enter the frontier directly in front
// of its own tail, so sibling lineages advance in lockstep and results over
// infinite targets arrive in bounded time.
class MatchStream {
 public:
  MatchStream(Interp& interp, MatchingState initial);
  // Next result frame, running sweeps as needed; nullopt when exhausted.
  std::optional<FramePtr> next();

 private:
  Interp& interp_;
  std::deque<StateVector> frontier_;
  std::deque<FramePtr> ready_;
  std::uint64_t sweep_ = 0;
};

// Entry points used by the evaluator.
ValuePtr eval_match_all(Interp& interp, const MatchAllExpr& e,
                        const EnvPtr& env);
ValuePtr eval_match(Interp& interp, const MatchExpr& e, const EnvPtr& env,
                    SourcePos pos);

}  // namespace loopmatch
