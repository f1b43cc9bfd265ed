#include "loopmatch/value.hpp"

#include "loopmatch/eval.hpp"

namespace loopmatch {

EnvPtr env_extend(FramePtr frame, EnvPtr parent) {
  return std::make_shared<const Environment>(
      Environment{std::move(frame), std::move(parent)});
}

ThunkPtr env_lookup(const EnvPtr& env, const std::string& name) {
  for (const Environment* e = env.get(); e; e = e->parent.get()) {
    if (e->frame) {
      if (ThunkPtr t = e->frame->find(name)) return t;
    }
  }
  return nullptr;
}

ValuePtr make_int(std::int64_t n) {
  // index values and small targets dominate; share them
  static constexpr std::int64_t kLo = -128, kHi = 1024;
  static const auto cache = [] {
    std::vector<ValuePtr> c;
    c.reserve(kHi - kLo + 1);
    for (std::int64_t i = kLo; i <= kHi; ++i)
      c.push_back(std::make_shared<const Value>(Value{i}));
    return c;
  }();
  if (n >= kLo && n <= kHi) return cache[static_cast<std::size_t>(n - kLo)];
  return std::make_shared<const Value>(Value{n});
}
ValuePtr make_bool(bool b) { return std::make_shared<const Value>(Value{b}); }
ValuePtr make_str(std::string s) {
  return std::make_shared<const Value>(Value{std::move(s)});
}
ValuePtr make_nil() {
  static const ValuePtr nil = std::make_shared<const Value>(Value{NilVal{}});
  return nil;
}
ValuePtr make_cons(ThunkPtr head, ThunkPtr tail) {
  return std::make_shared<const Value>(
      Value{ConsVal{std::move(head), std::move(tail)}});
}
ValuePtr make_tuple(std::vector<ThunkPtr> elems) {
  return std::make_shared<const Value>(Value{TupleVal{std::move(elems)}});
}
ValuePtr make_inductive(std::string ctor, std::vector<ThunkPtr> args) {
  return std::make_shared<const Value>(
      Value{InductiveVal{std::move(ctor), std::move(args)}});
}
ValuePtr make_hash(std::map<std::int64_t, ThunkPtr> entries) {
  return std::make_shared<const Value>(Value{HashVal{std::move(entries)}});
}
MatcherVal make_matcher(
    std::shared_ptr<const std::vector<MatcherClauseAst>> clauses,
    EnvPtr def_env) {
  auto memo = std::make_shared<
      std::vector<std::shared_ptr<const std::vector<ThunkPtr>>>>(
      clauses->size());
  return MatcherVal{std::move(clauses), std::move(def_env), std::move(memo)};
}

ValuePtr make_something() {
  static const ValuePtr s =
      std::make_shared<const Value>(Value{SomethingVal{}});
  return s;
}

const char* value_kind_name(const Value& v) {
  return std::visit(
      overloaded{
          [](std::int64_t) { return "integer"; },
          [](bool) { return "boolean"; },
          [](const std::string&) { return "string"; },
          [](const NilVal&) { return "collection"; },
          [](const ConsVal&) { return "collection"; },
          [](const TupleVal&) { return "tuple"; },
          [](const InductiveVal&) { return "inductive data"; },
          [](const HashVal&) { return "hash"; },
          [](const ClosureVal&) { return "closure"; },
          [](const BuiltinVal&) { return "builtin"; },
          [](const SomethingVal&) { return "matcher"; },
          [](const MatcherVal&) { return "matcher"; },
      },
      v.v);
}

// --- thunks -------------------------------------------------------------------

ThunkPtr Thunk::of_value(ValuePtr v) {
  auto t = std::make_shared<Thunk>();
  t->state_ = State::Done;
  t->value_ = std::move(v);
  return t;
}

ThunkPtr Thunk::of_expr(ExprPtr e, EnvPtr env) {
  auto t = std::make_shared<Thunk>();
  t->state_ = State::PendingExpr;
  t->expr_ = std::move(e);
  t->env_ = std::move(env);
  return t;
}

ThunkPtr Thunk::of_fn(std::function<ValuePtr(Interp&)> fn) {
  auto t = std::make_shared<Thunk>();
  t->state_ = State::PendingFn;
  t->fn_ = std::move(fn);
  return t;
}

ValuePtr Thunk::force(Interp& interp) {
  switch (state_) {
    case State::Done: return value_;
    case State::Busy:
      throw EvalError("divergent binding: value depends on itself",
                      expr_ ? expr_->pos : SourcePos{});
    case State::PendingExpr: {
      State saved = state_;
      state_ = State::Busy;
      try {
        value_ = eval(interp, expr_, env_);
      } catch (...) {
        state_ = saved;
        throw;
      }
      state_ = State::Done;
      expr_ = nullptr;
      env_ = nullptr;
      return value_;
    }
    case State::PendingFn: {
      State saved = state_;
      state_ = State::Busy;
      try {
        value_ = fn_(interp);
      } catch (...) {
        state_ = saved;
        throw;
      }
      state_ = State::Done;
      fn_ = nullptr;
      return value_;
    }
  }
  throw EvalError("corrupt thunk state");
}

// --- binding frames -------------------------------------------------------------

FramePtr frame_insert(const FramePtr& frame, const std::string& name,
                      ThunkPtr value) {
  auto next = frame ? std::make_shared<Frame>(*frame) : std::make_shared<Frame>();
  next->set(name, std::move(value));
  return next;
}

FramePtr frame_merge(const FramePtr& base, const FramePtr& extra) {
  if (!extra || extra->empty()) return base;
  if (!base || base->empty()) return extra;
  auto next = std::make_shared<Frame>(*base);
  for (const auto& [k, v] : *extra) next->set(k, v);
  return next;
}

namespace {

// Nested functional insert for multi-index bindings: each level is a hash
// keyed by the next index.
ThunkPtr hash_insert(Interp& interp, ThunkPtr existing,
                     const std::vector<std::int64_t>& indices, std::size_t at,
                     ThunkPtr value) {
  if (at == indices.size()) return value;
  std::map<std::int64_t, ThunkPtr> entries;
  if (existing) {
    ValuePtr v = existing->force(interp);
    if (const auto* h = std::get_if<HashVal>(&v->v)) entries = h->entries;
  }
  auto it = entries.find(indices[at]);
  ThunkPtr inner = it != entries.end() ? it->second : nullptr;
  entries[indices[at]] =
      hash_insert(interp, std::move(inner), indices, at + 1, std::move(value));
  return Thunk::of_value(make_hash(std::move(entries)));
}

}  // namespace

FramePtr bind_indexed(Interp& interp, const FramePtr& frame,
                      const std::string& name,
                      const std::vector<std::int64_t>& indices, ThunkPtr value,
                      SourcePos pos) {
  (void)pos;
  if (indices.empty()) return frame_insert(frame, name, std::move(value));
  ThunkPtr existing;
  if (frame) {
    existing = frame->find(name);
  }
  return frame_insert(
      frame, name,
      hash_insert(interp, std::move(existing), indices, 0, std::move(value)));
}

// --- deep equality ---------------------------------------------------------------

bool deep_equal(Interp& interp, const ValuePtr& a, const ValuePtr& b,
                SourcePos pos) {
  auto incomparable = [&](const ValuePtr& v) {
    return std::holds_alternative<ClosureVal>(v->v) ||
           std::holds_alternative<BuiltinVal>(v->v) ||
           std::holds_alternative<SomethingVal>(v->v) ||
           std::holds_alternative<MatcherVal>(v->v);
  };
  if (incomparable(a) || incomparable(b))
    throw EvalError("cannot compare closures or matchers for equality", pos);

  if (const auto* ai = std::get_if<std::int64_t>(&a->v)) {
    const auto* bi = std::get_if<std::int64_t>(&b->v);
    return bi && *ai == *bi;
  }
  if (const auto* ab = std::get_if<bool>(&a->v)) {
    const auto* bb = std::get_if<bool>(&b->v);
    return bb && *ab == *bb;
  }
  if (const auto* as = std::get_if<std::string>(&a->v)) {
    const auto* bs = std::get_if<std::string>(&b->v);
    return bs && *as == *bs;
  }
  bool a_coll = std::holds_alternative<NilVal>(a->v) ||
                std::holds_alternative<ConsVal>(a->v);
  bool b_coll = std::holds_alternative<NilVal>(b->v) ||
                std::holds_alternative<ConsVal>(b->v);
  if (a_coll || b_coll) {
    if (!a_coll || !b_coll) return false;
    ValuePtr x = a;
    ValuePtr y = b;
    while (true) {
      const auto* xc = std::get_if<ConsVal>(&x->v);
      const auto* yc = std::get_if<ConsVal>(&y->v);
      if (!xc && !yc) return true;
      if (!xc || !yc) return false;
      if (!deep_equal(interp, xc->head->force(interp), yc->head->force(interp),
                      pos))
        return false;
      x = xc->tail->force(interp);
      y = yc->tail->force(interp);
    }
  }
  if (const auto* at = std::get_if<TupleVal>(&a->v)) {
    const auto* bt = std::get_if<TupleVal>(&b->v);
    if (!bt || at->elems.size() != bt->elems.size()) return false;
    for (std::size_t i = 0; i < at->elems.size(); ++i)
      if (!deep_equal(interp, at->elems[i]->force(interp),
                      bt->elems[i]->force(interp), pos))
        return false;
    return true;
  }
  if (const auto* ad = std::get_if<InductiveVal>(&a->v)) {
    const auto* bd = std::get_if<InductiveVal>(&b->v);
    if (!bd || ad->ctor != bd->ctor || ad->args.size() != bd->args.size())
      return false;
    for (std::size_t i = 0; i < ad->args.size(); ++i)
      if (!deep_equal(interp, ad->args[i]->force(interp),
                      bd->args[i]->force(interp), pos))
        return false;
    return true;
  }
  if (const auto* ah = std::get_if<HashVal>(&a->v)) {
    const auto* bh = std::get_if<HashVal>(&b->v);
    if (!bh || ah->entries.size() != bh->entries.size()) return false;
    auto bi = bh->entries.begin();
    for (const auto& [k, v] : ah->entries) {
      if (bi->first != k) return false;
      if (!deep_equal(interp, v->force(interp), bi->second->force(interp), pos))
        return false;
      ++bi;
    }
    return true;
  }
  return false;
}

}  // namespace loopmatch
