#include "loopmatch/eval.hpp"

#include <cctype>

#include "loopmatch/engine.hpp"
#include "loopmatch/interp.hpp"

namespace loopmatch {

namespace {

ValuePtr lookup_var(Interp& interp, const VarRef& var, const EnvPtr& env,
                    SourcePos pos) {
  ThunkPtr bound = env_lookup(env, var.name);
  if (!bound) throw EvalError("unbound variable: " + var.name, pos);
  ValuePtr v = bound->force(interp);
  for (const auto& index : var.indices) {
    ValuePtr iv = eval(interp, index, env);
    const auto* key = std::get_if<std::int64_t>(&iv->v);
    if (!key)
      throw EvalError("the expression after '_' must evaluate to an integer",
                      index->pos);
    const auto* hash = std::get_if<HashVal>(&v->v);
    if (!hash)
      throw EvalError(var.name + " is not a hash; cannot index it", pos);
    auto it = hash->entries.find(*key);
    if (it == hash->entries.end())
      throw EvalError("unbound variable: " + var.name + "_" +
                          std::to_string(*key) + " (no such hash key)",
                      pos);
    v = it->second->force(interp);
  }
  return v;
}

// Builds the matcher clauses an algebraic-data-matcher expands to: one clause
// per constructor, then a value clause, then a catch-all.
ExprPtr build_adm_matcher(const AdmExpr& adm, SourcePos pos) {
  auto expr_of = [&](auto node) {
    return std::make_shared<const Expr>(Expr{pos, std::move(node)});
  };
  auto pp_of = [&](auto node) {
    return std::make_shared<const PpNode>(PpNode{pos, std::move(node)});
  };
  auto dp_of = [&](auto node) {
    return std::make_shared<const DpNode>(DpNode{pos, std::move(node)});
  };

  std::vector<MatcherClauseAst> clauses;
  for (std::size_t ci = 0; ci < adm.ctors.size(); ++ci) {
    const AdmCtor& ctor = adm.ctors[ci];
    for (std::size_t cj = 0; cj < ci; ++cj)
      if (adm.ctors[cj].name == ctor.name)
        throw EvalError("duplicate constructor '" + ctor.name +
                            "' in algebraic-data-matcher",
                        pos);
    std::size_t arity = ctor.arg_matchers.size();
    std::string data_ctor = ctor.name;
    data_ctor[0] =
        static_cast<char>(std::toupper(static_cast<unsigned char>(data_ctor[0])));

    std::vector<PpPtr> holes(arity, pp_of(PpHole{}));
    std::vector<DpPtr> dp_vars;
    std::vector<ExprPtr> var_refs;
    for (std::size_t i = 0; i < arity; ++i) {
      std::string slot = "#" + std::to_string(i + 1);
      dp_vars.push_back(dp_of(DpVar{slot}));
      var_refs.push_back(expr_of(VarRef{slot, {}}));
    }
    ExprPtr ok = expr_of(CollectionExpr{{expr_of(TupleExpr{var_refs})}});
    ExprPtr none = expr_of(CollectionExpr{{}});
    clauses.push_back(MatcherClauseAst{
        pp_of(PpInductive{ctor.name, holes}),
        expr_of(TupleExpr{ctor.arg_matchers}),
        {MatcherDataClause{dp_of(DpInductive{data_ctor, dp_vars}), ok},
         MatcherDataClause{dp_of(DpWildcard{}), none}}});
  }

  // [,$val [] {[$tgt (if (eq? val tgt) {[]} {})]}]
  ExprPtr eq_call = expr_of(ApplyExpr{
      expr_of(VarRef{"eq?", {}}),
      {expr_of(VarRef{"#val", {}}), expr_of(VarRef{"#tgt", {}})}});
  ExprPtr one_empty =
      expr_of(CollectionExpr{{expr_of(TupleExpr{{}})}});
  ExprPtr none = expr_of(CollectionExpr{{}});
  clauses.push_back(MatcherClauseAst{
      pp_of(PpValueHole{"#val"}),
      expr_of(TupleExpr{{}}),
      {MatcherDataClause{dp_of(DpVar{"#tgt"}),
                         expr_of(IfExpr{eq_call, one_empty, none})}}});

  // [$ [something] {[$tgt {[tgt]}]}]
  clauses.push_back(MatcherClauseAst{
      pp_of(PpHole{}),
      expr_of(TupleExpr{{expr_of(VarRef{"something", {}})}}),
      {MatcherDataClause{
          dp_of(DpVar{"#tgt"}),
          expr_of(CollectionExpr{
              {expr_of(TupleExpr{{expr_of(VarRef{"#tgt", {}})}})}})}}});

  return expr_of(MatcherExpr{std::move(clauses)});
}

}  // namespace

ValuePtr apply(Interp& interp, const ValuePtr& fn, std::vector<ThunkPtr> args,
               SourcePos pos) {
  if (const auto* closure = std::get_if<ClosureVal>(&fn->v)) {
    if (closure->params.size() != args.size())
      throw EvalError("function expects " +
                          std::to_string(closure->params.size()) +
                          " arguments, got " + std::to_string(args.size()),
                      pos);
    auto frame = std::make_shared<Frame>();
    for (std::size_t i = 0; i < args.size(); ++i)
      frame->set(closure->params[i], std::move(args[i]));
    return eval(interp, closure->body, env_extend(frame, closure->env));
  }
  if (const auto* builtin = std::get_if<BuiltinVal>(&fn->v)) {
    int n = static_cast<int>(args.size());
    if (n < builtin->min_args ||
        (builtin->max_args >= 0 && n > builtin->max_args))
      throw EvalError(builtin->name + ": wrong number of arguments (" +
                          std::to_string(n) + ")",
                      pos);
    return builtin->fn(interp, args, pos);
  }
  throw EvalError(std::string("cannot apply a ") + value_kind_name(*fn), pos);
}

ValuePtr eval(Interp& interp, const ExprPtr& expr, const EnvPtr& env) {
  const Expr& e = *expr;
  return std::visit(
      overloaded{
          [&](const BoolLit& b) { return make_bool(b.value); },
          [&](const IntLit& i) { return make_int(i.value); },
          [&](const StrLit& s) { return make_str(s.value); },
          [&](const VarRef& v) { return lookup_var(interp, v, env, e.pos); },
          [&](const DataExpr& d) {
            std::vector<ThunkPtr> args;
            args.reserve(d.args.size());
            for (const auto& a : d.args) args.push_back(Thunk::of_expr(a, env));
            return make_inductive(d.ctor, std::move(args));
          },
          [&](const TupleExpr& t) {
            if (t.elems.empty()) {
              static const ValuePtr empty = make_tuple({});
              return empty;
            }
            std::vector<ThunkPtr> elems;
            elems.reserve(t.elems.size());
            for (const auto& x : t.elems)
              elems.push_back(Thunk::of_expr(x, env));
            return make_tuple(std::move(elems));
          },
          [&](const CollectionExpr& c) {
            ValuePtr tail = make_nil();
            for (auto it = c.elems.rbegin(); it != c.elems.rend(); ++it)
              tail = make_cons(Thunk::of_expr(*it, env),
                               Thunk::of_value(std::move(tail)));
            return tail;
          },
          [&](const HashExpr& h) {
            std::map<std::int64_t, ThunkPtr> entries;
            for (const auto& [k, v] : h.entries)
              entries[k] = Thunk::of_expr(v, env);
            return make_hash(std::move(entries));
          },
          [&](const LambdaExpr& l) {
            return std::make_shared<const Value>(
                Value{ClosureVal{l.params, l.body, env}});
          },
          [&](const ApplyExpr& a) {
            ValuePtr fn = eval(interp, a.fn, env);
            std::vector<ThunkPtr> args;
            args.reserve(a.args.size());
            for (const auto& arg : a.args)
              args.push_back(Thunk::of_expr(arg, env));
            return apply(interp, fn, std::move(args), e.pos);
          },
          [&](const IfExpr& i) {
            ValuePtr c = eval(interp, i.cond, env);
            const bool* b = std::get_if<bool>(&c->v);
            if (!b)
              throw EvalError(std::string("if condition must be a boolean, "
                                          "got ") +
                                  value_kind_name(*c),
                              i.cond->pos);
            return eval(interp, *b ? i.then_branch : i.else_branch, env);
          },
          [&](const LetExpr& l) {
            if (l.recursive) {
              auto frame = std::make_shared<Frame>();
              EnvPtr inner = env_extend(frame, env);
              for (const auto& [name, bound] : l.bindings)
                frame->set(name, Thunk::of_expr(bound, inner));
              return eval(interp, l.body, inner);
            }
            EnvPtr cur = env;
            for (const auto& [name, bound] : l.bindings) {
              auto frame = std::make_shared<Frame>();
              frame->set(name, Thunk::of_expr(bound, cur));
              cur = env_extend(frame, cur);
            }
            return eval(interp, l.body, cur);
          },
          [&](const MatchAllExpr& m) { return eval_match_all(interp, m, env); },
          [&](const MatchExpr& m) {
            return eval_match(interp, m, env, e.pos);
          },
          [&](const MatcherExpr& m) {
            return std::make_shared<const Value>(Value{make_matcher(
                std::make_shared<const std::vector<MatcherClauseAst>>(
                    m.clauses),
                env)});
          },
          [&](const AdmExpr& adm) {
            ExprPtr matcher = build_adm_matcher(adm, e.pos);
            return eval(interp, matcher, env);
          },
      },
      e.v);
}

}  // namespace loopmatch
