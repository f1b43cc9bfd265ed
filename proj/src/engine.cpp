#include "loopmatch/engine.hpp"

#include "loopmatch/eval.hpp"
#include "loopmatch/interp.hpp"

namespace loopmatch {

namespace {

PatternPtr ellipsis_pattern() {
  static const PatternPtr p =
      std::make_shared<const Pattern>(Pattern{{}, EllipsisPat{}});
  return p;
}

ThunkPtr something_thunk() {
  static const ThunkPtr t = Thunk::of_value(make_something());
  return t;
}

FramePtr empty_frame() {
  static const FramePtr f = std::make_shared<const Frame>();
  return f;
}

std::vector<std::int64_t> eval_indices(Interp& interp,
                                       const std::vector<ExprPtr>& indices,
                                       const EnvPtr& env) {
  std::vector<std::int64_t> out;
  out.reserve(indices.size());
  for (const auto& ix : indices) {
    ValuePtr v = eval(interp, ix, env);
    const auto* n = std::get_if<std::int64_t>(&v->v);
    if (!n)
      throw EvalError("the expression after '_' must evaluate to an integer",
                      ix->pos);
    out.push_back(*n);
  }
  return out;
}

StepOutcome dead() { return {std::nullopt, std::nullopt}; }

StepOutcome one(MatchingState state) {
  return {std::nullopt, StateVector::of({std::move(state)})};
}

StepOutcome many(std::vector<MatchingState> states) {
  return {std::nullopt, StateVector::of(std::move(states))};
}

// ppm: matches a pattern-pattern against a pattern, yielding the subpatterns
// for the clause's holes plus bindings for its value holes.
struct PpMatch {
  std::vector<PatternPtr> subpatterns;
  FramePtr bindings;
};

std::optional<PpMatch> ppm(Interp& interp, const PpPtr& pp, const EnvPtr& env,
                           const PatternPtr& p) {
  return std::visit(
      overloaded{
          [&](const PpHole&) -> std::optional<PpMatch> {
            return PpMatch{{p}, nullptr};
          },
          [&](const PpValueHole& hole) -> std::optional<PpMatch> {
            const auto* vp = std::get_if<ValuePat>(&p->v);
            if (!vp) return std::nullopt;
            return PpMatch{{},
                           frame_insert(nullptr, hole.name,
                                        Thunk::of_expr(vp->expr, env))};
          },
          [&](const PpInductive& ind) -> std::optional<PpMatch> {
            const auto* ip = std::get_if<InductivePat>(&p->v);
            if (!ip || ip->ctor != ind.ctor ||
                ip->args.size() != ind.args.size())
              return std::nullopt;
            PpMatch acc{{}, nullptr};
            for (std::size_t i = 0; i < ind.args.size(); ++i) {
              auto sub = ppm(interp, ind.args[i], env, ip->args[i]);
              if (!sub) return std::nullopt;
              acc.subpatterns.insert(acc.subpatterns.end(),
                                     sub->subpatterns.begin(),
                                     sub->subpatterns.end());
              acc.bindings = frame_merge(acc.bindings, sub->bindings);
            }
            return acc;
          },
      },
      pp->v);
}

// pdm: matches a data-pattern against the target. Only inductive data
// patterns force the target.
std::optional<FramePtr> pdm(Interp& interp, const DpPtr& dp,
                            const ThunkPtr& target) {
  return std::visit(
      overloaded{
          [&](const DpVar& var) -> std::optional<FramePtr> {
            return frame_insert(nullptr, var.name, target);
          },
          [&](const DpWildcard&) -> std::optional<FramePtr> {
            return FramePtr{nullptr};
          },
          [&](const DpInductive& ind) -> std::optional<FramePtr> {
            ValuePtr v = target->force(interp);
            const auto* dv = std::get_if<InductiveVal>(&v->v);
            if (!dv || dv->ctor != ind.ctor ||
                dv->args.size() != ind.args.size())
              return std::nullopt;
            FramePtr acc;
            for (std::size_t i = 0; i < ind.args.size(); ++i) {
              auto sub = pdm(interp, ind.args[i], dv->args[i]);
              if (!sub) return std::nullopt;
              acc = frame_merge(acc, *sub);
            }
            return acc;
          },
      },
      dp->v);
}

// Commits to the first clause whose pp matches the pattern and, within it,
// the first data clause whose dp matches the target. Successor states are
// produced lazily, one per tuple of the data clause's next-target collection.
StepOutcome resolve_matcher_clause(Interp& interp, const MatchingState& state,
                                   const PatternPtr& p, const MatcherVal& m,
                                   const ThunkPtr& target, AtomsPtr rest) {
  EnvPtr penv = pattern_env(state);
  for (std::size_t ci = 0; ci < m.clauses->size(); ++ci) {
    const MatcherClauseAst& clause = (*m.clauses)[ci];
    auto pm = ppm(interp, clause.pp, penv, p);
    if (!pm) continue;
    for (const MatcherDataClause& dc : clause.data_clauses) {
      auto dm = pdm(interp, dc.dp, target);
      if (!dm) continue;

      auto& memo = (*m.matcher_memo)[ci];
      if (!memo) {
        ValuePtr matchers_v = eval(interp, clause.next_matchers, m.def_env);
        const auto* mt = std::get_if<TupleVal>(&matchers_v->v);
        if (!mt)
          throw EvalError(
              "matcher clause: next matchers must evaluate to a tuple",
              clause.next_matchers->pos);
        if (mt->elems.size() != pm->subpatterns.size())
          throw EvalError(
              "matcher clause: " + std::to_string(pm->subpatterns.size()) +
                  " pattern holes but " + std::to_string(mt->elems.size()) +
                  " next matchers",
              clause.next_matchers->pos);
        memo = std::make_shared<const std::vector<ThunkPtr>>(mt->elems);
      }

      FramePtr bindings = frame_merge(pm->bindings, *dm);
      EnvPtr nenv = bindings && !bindings->empty()
                        ? env_extend(std::move(bindings), m.def_env)
                        : m.def_env;
      auto tuples = std::make_shared<ThunkPtr>(
          Thunk::of_expr(dc.next_targets, nenv));

      auto subpatterns = std::make_shared<std::vector<PatternPtr>>(
          std::move(pm->subpatterns));
      auto matchers = memo;
      Interp* ip = &interp;
      SourcePos npos = dc.next_targets->pos;
      MatchingState base{rest, state.gamma, state.delta, state.loops};

      StateVector vec([ip, tuples, subpatterns, matchers, base,
                       npos]() -> std::optional<MatchingState> {
                ValuePtr coll = (*tuples)->force(*ip);
                const auto* cons = std::get_if<ConsVal>(&coll->v);
                if (!cons) {
                  if (!std::holds_alternative<NilVal>(coll->v))
                    throw EvalError(
                        "matcher data clause must produce a collection of "
                        "tuples",
                        npos);
                  return std::nullopt;
                }
                *tuples = cons->tail;
                ValuePtr tup = cons->head->force(*ip);
                const auto* tv = std::get_if<TupleVal>(&tup->v);
                if (!tv || tv->elems.size() != subpatterns->size())
                  throw EvalError(
                      "matcher data clause produced a tuple of the wrong "
                      "arity",
                      npos);
                AtomsPtr atoms = base.atoms;
                for (std::size_t i = subpatterns->size(); i-- > 0;)
                  atoms = atoms_push({(*subpatterns)[i], (*matchers)[i],
                                      tv->elems[i]},
                                     atoms);
                return MatchingState{atoms, base.gamma, base.delta,
                                     base.loops};
              });

      // the pull sequence is unchanged by looking one state ahead, and an
      // empty successor collection never has to enter the frontier
      std::optional<MatchingState> first = vec.pull();
      if (!first) return dead();
      return {std::nullopt,
              StateVector::prepend(std::move(*first), std::move(vec))};
    }
    throw EvalError("no data clause of the matcher accepts the target",
                    p->pos);
  }
  throw EvalError("no matcher clause for pattern " + to_text(*p), p->pos);
}

StepOutcome expand_loop(Interp& interp, const MatchingState& state,
                        const LoopPat& loop, const MatchingAtom& atom,
                        AtomsPtr rest) {
  EnvPtr penv = pattern_env(state);
  ValuePtr start_v = eval(interp, loop.start, penv);
  const auto* start = std::get_if<std::int64_t>(&start_v->v);
  if (!start)
    throw EvalError("loop start number must be an integer", loop.start->pos);

  auto ctx = std::make_shared<const LoopContext>(LoopContext{
      loop.index_var, *start - 1, Thunk::of_expr(loop.ends, penv),
      loop.end_num_pat, loop.repeat_pat, loop.end_pat,
      frame_insert(nullptr, loop.index_var,
                   Thunk::of_value(make_int(*start - 1)))});
  AtomsPtr atoms =
      atoms_push({ellipsis_pattern(), atom.matcher, atom.target}, rest);
  return one({atoms, state.gamma, state.delta,
              loops_push(std::move(ctx), state.loops)});
}

LoopCtxPtr advance_ctx(const LoopContext& ctx, ThunkPtr ends) {
  return std::make_shared<const LoopContext>(LoopContext{
      ctx.index_name, ctx.index_value + 1, std::move(ends), ctx.end_num_pat,
      ctx.repeat_pat, ctx.end_pat,
      frame_insert(nullptr, ctx.index_name,
                   Thunk::of_value(make_int(ctx.index_value + 1)))});
}

// The ellipsis is replaced by the repeat pattern while the index is below the
// next end number, by the end pattern (end-number pattern first) when it
// reaches one, and by both when more end numbers remain. An exhausted or
// overshot end-number stream prunes the state.
StepOutcome expand_ellipsis(Interp& interp, const MatchingState& state,
                            const MatchingAtom& atom, AtomsPtr rest,
                            SourcePos pos) {
  if (!state.loops) throw EvalError("ellipsis outside loop", pos);
  const LoopCtxPtr& ctx = state.loops->ctx;
  LoopsPtr outer = state.loops->next;

  ValuePtr ends = ctx->ends->force(interp);
  const auto* cons = std::get_if<ConsVal>(&ends->v);
  if (!cons) {
    if (!std::holds_alternative<NilVal>(ends->v))
      throw EvalError("loop end numbers must be a collection of integers",
                      pos);
    return dead();
  }
  ValuePtr head = cons->head->force(interp);
  const auto* e1 = std::get_if<std::int64_t>(&head->v);
  if (!e1)
    throw EvalError("loop end numbers must be a collection of integers", pos);

  std::int64_t k = ctx->index_value;
  if (k < *e1) {
    AtomsPtr atoms =
        atoms_push({ctx->repeat_pat, atom.matcher, atom.target}, rest);
    return one({atoms, state.gamma, state.delta,
                loops_push(advance_ctx(*ctx, ctx->ends), outer)});
  }
  if (k == *e1) {
    AtomsPtr end_atoms = atoms_push(
        {ctx->end_num_pat, something_thunk(), Thunk::of_value(make_int(k))},
        atoms_push({ctx->end_pat, atom.matcher, atom.target}, rest));
    MatchingState end_state{end_atoms, state.gamma, state.delta, outer};

    ValuePtr tail = cons->tail->force(interp);
    if (std::holds_alternative<NilVal>(tail->v))
      return one(std::move(end_state));

    AtomsPtr rep_atoms =
        atoms_push({ctx->repeat_pat, atom.matcher, atom.target}, rest);
    MatchingState rep_state{rep_atoms, state.gamma, state.delta,
                            loops_push(advance_ctx(*ctx, cons->tail), outer)};
    return many({std::move(end_state), std::move(rep_state)});
  }
  return dead();  // start already beyond the next end number
}

}  // namespace

AtomsPtr atoms_push(MatchingAtom atom, AtomsPtr rest) {
  return std::make_shared<const AtomNode>(
      AtomNode{std::move(atom), std::move(rest)});
}

LoopsPtr loops_push(LoopCtxPtr ctx, LoopsPtr rest) {
  return std::make_shared<const LoopNode>(
      LoopNode{std::move(ctx), std::move(rest)});
}

EnvPtr pattern_env(const MatchingState& state) {
  EnvPtr env = state.gamma;
  if (state.delta && !state.delta->empty())
    env = env_extend(state.delta, env);
  // outer contexts first so inner index bindings shadow them
  std::vector<const LoopNode*> contexts;
  for (const LoopNode* n = state.loops.get(); n; n = n->next.get())
    contexts.push_back(n);
  for (auto it = contexts.rbegin(); it != contexts.rend(); ++it)
    env = env_extend((*it)->ctx->index_frame, env);
  return env;
}

StateVector::StateVector(std::function<std::optional<MatchingState>()> pull)
    : pull_(std::move(pull)) {}

StateVector StateVector::prepend(MatchingState head, StateVector tail) {
  auto slot =
      std::make_shared<std::optional<MatchingState>>(std::move(head));
  auto rest = std::make_shared<StateVector>(std::move(tail));
  return StateVector([slot, rest]() -> std::optional<MatchingState> {
    if (*slot) {
      std::optional<MatchingState> out = std::move(*slot);
      slot->reset();
      return out;
    }
    return rest->pull();
  });
}

StateVector StateVector::of(std::vector<MatchingState> states) {
  auto shared = std::make_shared<std::vector<MatchingState>>(std::move(states));
  auto index = std::make_shared<std::size_t>(0);
  return StateVector([shared, index]() -> std::optional<MatchingState> {
    if (*index >= shared->size()) return std::nullopt;
    return std::move((*shared)[(*index)++]);
  });
}

StepOutcome step_state(Interp& interp, const MatchingState& state) {
  ++interp.stats.states_stepped;
  if (!state.atoms)
    return {state.delta ? state.delta : empty_frame(), std::nullopt};

  const MatchingAtom& atom = state.atoms->atom;
  AtomsPtr rest = state.atoms->next;
  const Pattern& p = *atom.pattern;

  return std::visit(
      overloaded{
          [&](const WildcardPat&) {
            return one({rest, state.gamma, state.delta, state.loops});
          },
          [&](const EllipsisPat&) {
            return expand_ellipsis(interp, state, atom, rest, p.pos);
          },
          [&](const LoopPat& loop) {
            return expand_loop(interp, state, loop, atom, rest);
          },
          [&](const AndPat& ap) {
            AtomsPtr atoms = rest;
            for (auto it = ap.alts.rbegin(); it != ap.alts.rend(); ++it)
              atoms = atoms_push({*it, atom.matcher, atom.target}, atoms);
            return one({atoms, state.gamma, state.delta, state.loops});
          },
          [&](const OrPat& op) {
            std::vector<MatchingState> states;
            states.reserve(op.alts.size());
            for (const auto& alt : op.alts)
              states.push_back(
                  {atoms_push({alt, atom.matcher, atom.target}, rest),
                   state.gamma, state.delta, state.loops});
            return many(std::move(states));
          },
          [&](const NotPat& np) {
            MatchingState sub{
                atoms_push({np.sub, atom.matcher, atom.target}, nullptr),
                state.gamma, state.delta, state.loops};
            MatchStream nested(interp, std::move(sub));
            if (nested.next()) return dead();
            return one({rest, state.gamma, state.delta, state.loops});
          },
          [&](const LetPat& lp) {
            FramePtr delta = state.delta;
            for (const LetPatBinding& b : lp.bindings) {
              MatchingState scoped{state.atoms, state.gamma, delta,
                                   state.loops};
              EnvPtr env = pattern_env(scoped);
              auto indices = eval_indices(interp, b.indices, env);
              delta = bind_indexed(interp, delta, b.name, indices,
                                   Thunk::of_expr(b.expr, env), p.pos);
            }
            return one({atoms_push({lp.body, atom.matcher, atom.target}, rest),
                        state.gamma, delta, state.loops});
          },
          [&](const PatVar& pv) {
            ValuePtr m = atom.matcher->force(interp);
            if (std::holds_alternative<SomethingVal>(m->v) ||
                std::holds_alternative<TupleVal>(m->v)) {
              EnvPtr env = pattern_env(state);
              auto indices = eval_indices(interp, pv.indices, env);
              FramePtr delta = bind_indexed(interp, state.delta, pv.name,
                                            indices, atom.target, p.pos);
              return one({rest, state.gamma, delta, state.loops});
            }
            if (const auto* mv = std::get_if<MatcherVal>(&m->v))
              return resolve_matcher_clause(interp, state, atom.pattern, *mv,
                                            atom.target, rest);
            throw EvalError(std::string("cannot match against a ") +
                                value_kind_name(*m),
                            p.pos);
          },
          [&](const ValuePat&) {
            ValuePtr m = atom.matcher->force(interp);
            if (std::holds_alternative<SomethingVal>(m->v))
              throw EvalError(
                  "something can handle only wildcards and pattern variables",
                  p.pos);
            if (const auto* mv = std::get_if<MatcherVal>(&m->v))
              return resolve_matcher_clause(interp, state, atom.pattern, *mv,
                                            atom.target, rest);
            throw EvalError(std::string("cannot match a value pattern "
                                        "against a ") +
                                value_kind_name(*m),
                            p.pos);
          },
          [&](const InductivePat& ip) {
            ValuePtr m = atom.matcher->force(interp);
            if (std::holds_alternative<SomethingVal>(m->v))
              throw EvalError(
                  "something can handle only wildcards and pattern variables",
                  p.pos);
            if (const auto* mv = std::get_if<MatcherVal>(&m->v))
              return resolve_matcher_clause(interp, state, atom.pattern, *mv,
                                            atom.target, rest);
            throw EvalError("cannot match pattern <" + ip.ctor +
                                " ...> against a " + value_kind_name(*m),
                            p.pos);
          },
          [&](const TuplePat& tp) {
            ValuePtr m = atom.matcher->force(interp);
            ValuePtr tv = atom.target->force(interp);
            const auto* tuple = std::get_if<TupleVal>(&tv->v);
            if (!tuple)
              throw EvalError(std::string("tuple pattern requires a tuple "
                                          "target, got ") +
                                  value_kind_name(*tv),
                              p.pos);
            if (tuple->elems.size() != tp.elems.size())
              throw EvalError("tuple pattern arity " +
                                  std::to_string(tp.elems.size()) +
                                  " does not match target arity " +
                                  std::to_string(tuple->elems.size()),
                              p.pos);
            const TupleVal* mt = std::get_if<TupleVal>(&m->v);
            if (!mt && !std::holds_alternative<SomethingVal>(m->v))
              throw EvalError(
                  "tuple pattern requires a tuple of matchers or something",
                  p.pos);
            if (mt && mt->elems.size() != tp.elems.size())
              throw EvalError("tuple pattern arity " +
                                  std::to_string(tp.elems.size()) +
                                  " does not match matcher arity " +
                                  std::to_string(mt->elems.size()),
                              p.pos);
            AtomsPtr atoms = rest;
            for (std::size_t i = tp.elems.size(); i-- > 0;)
              atoms = atoms_push({tp.elems[i],
                                  mt ? mt->elems[i] : something_thunk(),
                                  tuple->elems[i]},
                                 atoms);
            return one({atoms, state.gamma, state.delta, state.loops});
          },
      },
      p.v);
}

MatchStream::MatchStream(Interp& interp, MatchingState initial)
    : interp_(interp) {
  frontier_.push_back(StateVector::of({std::move(initial)}));
}

std::optional<FramePtr> MatchStream::next() {
  while (ready_.empty() && !frontier_.empty()) {
    ++sweep_;
    ++interp_.stats.sweeps;
    std::deque<StateVector> next_frontier;
    std::size_t emitted = 0;
    for (auto& vec : frontier_) {
      auto state = vec.pull();
      if (!state) continue;  // exhausted vector drops out
      StepOutcome out = step_state(interp_, *state);
      if (out.result) {
        ready_.push_back(std::move(*out.result));
        ++emitted;
      }
      // spawned successors run directly in front of this vector's tail
      if (out.spawned) next_frontier.push_back(std::move(*out.spawned));
      next_frontier.push_back(std::move(vec));
    }
    frontier_ = std::move(next_frontier);
    interp_.stats.results_emitted += emitted;
    if (interp_.trace) interp_.trace(sweep_, frontier_.size(), emitted);
  }
  if (ready_.empty()) return std::nullopt;
  FramePtr out = std::move(ready_.front());
  ready_.pop_front();
  return out;
}

namespace {

ThunkPtr match_all_spine(std::shared_ptr<MatchStream> stream, ExprPtr body,
                         EnvPtr env) {
  return Thunk::of_fn([stream, body, env](Interp&) -> ValuePtr {
    auto frame = stream->next();
    if (!frame) return make_nil();
    EnvPtr body_env =
        frame->get()->empty() ? env : env_extend(*frame, env);
    return make_cons(Thunk::of_expr(body, body_env),
                     match_all_spine(stream, body, env));
  });
}

}  // namespace

ValuePtr eval_match_all(Interp& interp, const MatchAllExpr& e,
                        const EnvPtr& env) {
  MatchingState initial{
      atoms_push({e.pattern, Thunk::of_expr(e.matcher, env),
                  Thunk::of_expr(e.target, env)},
                 nullptr),
      env, nullptr, nullptr};
  auto stream = std::make_shared<MatchStream>(interp, std::move(initial));
  return match_all_spine(std::move(stream), e.body, env)->force(interp);
}

ValuePtr eval_match(Interp& interp, const MatchExpr& e, const EnvPtr& env,
                    SourcePos pos) {
  ThunkPtr target = Thunk::of_expr(e.target, env);
  ThunkPtr matcher = Thunk::of_expr(e.matcher, env);
  for (const auto& [pattern, body] : e.clauses) {
    MatchingState initial{atoms_push({pattern, matcher, target}, nullptr), env,
                          nullptr, nullptr};
    MatchStream stream(interp, std::move(initial));
    if (auto frame = stream.next()) {
      EnvPtr body_env =
          frame->get()->empty() ? env : env_extend(*frame, env);
      return eval(interp, body, body_env);
    }
  }
  throw EvalError("no matching clause", pos);
}

}  // namespace loopmatch
