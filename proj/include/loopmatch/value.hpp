#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "loopmatch/ast.hpp"

namespace loopmatch {

struct Value;
class Thunk;
struct Environment;
class Interp;

using ValuePtr = std::shared_ptr<const Value>;
using ThunkPtr = std::shared_ptr<Thunk>;
using EnvPtr = std::shared_ptr<const Environment>;

// One binding frame: used for environment frames, match bindings (the
// accumulated result of a search lineage), and loop index bindings.
// Flat storage; frames are small and lookups are linear.
class Frame {
 public:
  ThunkPtr find(const std::string& name) const {
    for (const auto& [k, v] : entries_)
      if (k == name) return v;
    return nullptr;
  }
  void set(const std::string& name, ThunkPtr value) {
    for (auto& [k, v] : entries_) {
      if (k == name) {
        v = std::move(value);
        return;
      }
    }
    entries_.emplace_back(name, std::move(value));
  }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  std::vector<std::pair<std::string, ThunkPtr>> entries_;
};
using FramePtr = std::shared_ptr<const Frame>;

// Environments are chains of immutable frames; lookup returns the innermost
// binding. The session frame at the top level grows as defines run, which is
// how later defines become visible to earlier bodies.
struct Environment {
  FramePtr frame;
  EnvPtr parent;
};

EnvPtr env_extend(FramePtr frame, EnvPtr parent);
// nullptr when the name is unbound anywhere in the chain.
ThunkPtr env_lookup(const EnvPtr& env, const std::string& name);

// --- runtime values ----------------------------------------------------------

struct NilVal {};
struct ConsVal {
  ThunkPtr head;
  ThunkPtr tail;  // forces to NilVal or ConsVal
};
struct TupleVal {
  std::vector<ThunkPtr> elems;
};
struct InductiveVal {
  std::string ctor;
  std::vector<ThunkPtr> args;
};
struct HashVal {
  std::map<std::int64_t, ThunkPtr> entries;
};
struct ClosureVal {
  std::vector<std::string> params;
  ExprPtr body;
  EnvPtr env;
};
struct BuiltinVal {
  std::string name;
  int min_args;
  int max_args;  // -1 = variadic
  ValuePtr (*fn)(Interp&, const std::vector<ThunkPtr>&, SourcePos);
};
struct SomethingVal {};
// A user matcher: the clause list plus the environment it was defined in.
// Next-matcher and next-target expressions evaluate against def_env per use.
struct MatcherVal {
  std::shared_ptr<const std::vector<MatcherClauseAst>> clauses;
  EnvPtr def_env;
  // per-clause memo of the evaluated next-matchers tuple; next-matcher
  // expressions are pure in def_env, so the first evaluation stands
  std::shared_ptr<std::vector<std::shared_ptr<const std::vector<ThunkPtr>>>>
      matcher_memo;
  // clauses shaped [$ [m] {[$z {[z]}]}] forward the target unchanged; the
  // engine resolves them without evaluating the data clause
  std::shared_ptr<const std::vector<bool>> passthrough;
};

MatcherVal make_matcher(
    std::shared_ptr<const std::vector<MatcherClauseAst>> clauses,
    EnvPtr def_env);

struct Value {
  std::variant<std::int64_t, bool, std::string, NilVal, ConsVal, TupleVal,
               InductiveVal, HashVal, ClosureVal, BuiltinVal, SomethingVal,
               MatcherVal>
      v;
};

ValuePtr make_int(std::int64_t n);
ValuePtr make_bool(bool b);
ValuePtr make_str(std::string s);
ValuePtr make_nil();
ValuePtr make_cons(ThunkPtr head, ThunkPtr tail);
ValuePtr make_tuple(std::vector<ThunkPtr> elems);
ValuePtr make_inductive(std::string ctor, std::vector<ThunkPtr> args);
ValuePtr make_hash(std::map<std::int64_t, ThunkPtr> entries);
ValuePtr make_something();

const char* value_kind_name(const Value& v);

template <class T>
const T* value_as(const ValuePtr& v) {
  return std::get_if<T>(&v->v);
}

// --- delayed values ----------------------------------------------------------

// Call-by-need cell. Forcing runs the underlying computation at most once;
// re-entering a cell during its own forcing reports a divergent binding.
class Thunk {
 public:
  static ThunkPtr of_value(ValuePtr v);
  static ThunkPtr of_expr(ExprPtr e, EnvPtr env);
  static ThunkPtr of_fn(std::function<ValuePtr(Interp&)> fn);

  ValuePtr force(Interp& interp);

 private:
  enum class State { Done, PendingExpr, PendingFn, Busy };
  State state_ = State::Done;
  ValuePtr value_;
  ExprPtr expr_;
  EnvPtr env_;
  std::function<ValuePtr(Interp&)> fn_;
};

// --- core operations ----------------------------------------------------------

// Binds name -> value through a chain of integer indices, merging into any
// hash already bound in the frame. Functional: the input frame is unchanged.
FramePtr bind_indexed(Interp& interp, const FramePtr& frame,
                      const std::string& name,
                      const std::vector<std::int64_t>& indices, ThunkPtr value,
                      SourcePos pos = {});

FramePtr frame_insert(const FramePtr& frame, const std::string& name,
                      ThunkPtr value);
FramePtr frame_merge(const FramePtr& base, const FramePtr& extra);

// Structural equality; fully forces both sides. Comparing closures, builtins,
// or matchers is a type error.
bool deep_equal(Interp& interp, const ValuePtr& a, const ValuePtr& b,
                SourcePos pos = {});

}  // namespace loopmatch
