#include <optional>

#include "loopmatch/eval.hpp"
#include "loopmatch/interp.hpp"

namespace loopmatch {

namespace {

std::int64_t force_int(Interp& interp, const ThunkPtr& t, const char* who,
                       SourcePos pos) {
  ValuePtr v = t->force(interp);
  const auto* n = std::get_if<std::int64_t>(&v->v);
  if (!n)
    throw EvalError(std::string(who) + ": expected an integer, got " +
                        value_kind_name(*v),
                    pos);
  return *n;
}

ValuePtr force_collection(Interp& interp, const ThunkPtr& t, const char* who,
                          SourcePos pos) {
  ValuePtr v = t->force(interp);
  if (!std::holds_alternative<NilVal>(v->v) &&
      !std::holds_alternative<ConsVal>(v->v))
    throw EvalError(std::string(who) + ": expected a collection, got " +
                        value_kind_name(*v),
                    pos);
  return v;
}

ValuePtr arith(Interp& interp, const std::vector<ThunkPtr>& args, SourcePos pos,
               const char* name, char op) {
  std::int64_t acc = force_int(interp, args[0], name, pos);
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::int64_t rhs = force_int(interp, args[i], name, pos);
    std::int64_t out = 0;
    bool overflow = false;
    switch (op) {
      case '+': overflow = __builtin_add_overflow(acc, rhs, &out); break;
      case '-': overflow = __builtin_sub_overflow(acc, rhs, &out); break;
      case '*': overflow = __builtin_mul_overflow(acc, rhs, &out); break;
    }
    if (overflow)
      throw EvalError(std::string(name) + ": integer overflow", pos);
    acc = out;
  }
  return make_int(acc);
}

ValuePtr bi_add(Interp& i, const std::vector<ThunkPtr>& a, SourcePos p) {
  return arith(i, a, p, "+", '+');
}
ValuePtr bi_sub(Interp& i, const std::vector<ThunkPtr>& a, SourcePos p) {
  return arith(i, a, p, "-", '-');
}
ValuePtr bi_mul(Interp& i, const std::vector<ThunkPtr>& a, SourcePos p) {
  return arith(i, a, p, "*", '*');
}

ValuePtr bi_eq(Interp& interp, const std::vector<ThunkPtr>& args,
               SourcePos pos) {
  return make_bool(
      deep_equal(interp, args[0]->force(interp), args[1]->force(interp), pos));
}

ValuePtr bi_car(Interp& interp, const std::vector<ThunkPtr>& args,
                SourcePos pos) {
  ValuePtr v = force_collection(interp, args[0], "car", pos);
  const auto* c = std::get_if<ConsVal>(&v->v);
  if (!c) throw EvalError("car: empty collection", pos);
  return c->head->force(interp);
}

ValuePtr bi_cdr(Interp& interp, const std::vector<ThunkPtr>& args,
                SourcePos pos) {
  ValuePtr v = force_collection(interp, args[0], "cdr", pos);
  const auto* c = std::get_if<ConsVal>(&v->v);
  if (!c) throw EvalError("cdr: empty collection", pos);
  return c->tail->force(interp);
}

ValuePtr bi_empty(Interp& interp, const std::vector<ThunkPtr>& args,
                  SourcePos pos) {
  ValuePtr v = force_collection(interp, args[0], "empty?", pos);
  return make_bool(std::holds_alternative<NilVal>(v->v));
}

ValuePtr bi_cons(Interp&, const std::vector<ThunkPtr>& args, SourcePos) {
  return make_cons(args[0], args[1]);
}

ThunkPtr append_thunk(ThunkPtr xs, ThunkPtr ys, SourcePos pos) {
  return Thunk::of_fn([xs, ys, pos](Interp& interp) -> ValuePtr {
    ValuePtr v = force_collection(interp, xs, "append", pos);
    if (const auto* c = std::get_if<ConsVal>(&v->v))
      return make_cons(c->head, append_thunk(c->tail, ys, pos));
    return force_collection(interp, ys, "append", pos);
  });
}

ValuePtr bi_append(Interp& interp, const std::vector<ThunkPtr>& args,
                   SourcePos pos) {
  return append_thunk(args[0], args[1], pos)->force(interp);
}

ThunkPtr concat_thunk(ThunkPtr xss, SourcePos pos) {
  return Thunk::of_fn([xss, pos](Interp& interp) -> ValuePtr {
    ValuePtr v = force_collection(interp, xss, "concat", pos);
    if (const auto* c = std::get_if<ConsVal>(&v->v))
      return append_thunk(c->head, concat_thunk(c->tail, pos), pos)
          ->force(interp);
    return make_nil();
  });
}

ValuePtr bi_concat(Interp& interp, const std::vector<ThunkPtr>& args,
                   SourcePos pos) {
  return concat_thunk(args[0], pos)->force(interp);
}

ThunkPtr int_stream(std::int64_t start, std::optional<std::int64_t> last) {
  return Thunk::of_fn([start, last](Interp&) -> ValuePtr {
    if (last && start > *last) return make_nil();
    return make_cons(Thunk::of_value(make_int(start)),
                     int_stream(start + 1, last));
  });
}

ValuePtr bi_between(Interp& interp, const std::vector<ThunkPtr>& args,
                    SourcePos pos) {
  std::int64_t a = force_int(interp, args[0], "between", pos);
  std::int64_t b = force_int(interp, args[1], "between", pos);
  return int_stream(a, b)->force(interp);
}

ValuePtr bi_from(Interp& interp, const std::vector<ThunkPtr>& args,
                 SourcePos pos) {
  std::int64_t a = force_int(interp, args[0], "from", pos);
  return int_stream(a, std::nullopt)->force(interp);
}

ThunkPtr take_thunk(std::int64_t n, ThunkPtr xs, SourcePos pos) {
  return Thunk::of_fn([n, xs, pos](Interp& interp) -> ValuePtr {
    if (n <= 0) return make_nil();
    ValuePtr v = force_collection(interp, xs, "take", pos);
    if (const auto* c = std::get_if<ConsVal>(&v->v))
      return make_cons(c->head, take_thunk(n - 1, c->tail, pos));
    return make_nil();
  });
}

ValuePtr bi_take(Interp& interp, const std::vector<ThunkPtr>& args,
                 SourcePos pos) {
  std::int64_t n = force_int(interp, args[0], "take", pos);
  return take_thunk(n, args[1], pos)->force(interp);
}

ValuePtr bi_drop(Interp& interp, const std::vector<ThunkPtr>& args,
                 SourcePos pos) {
  std::int64_t n = force_int(interp, args[0], "drop", pos);
  ValuePtr v = force_collection(interp, args[1], "drop", pos);
  while (n > 0) {
    const auto* c = std::get_if<ConsVal>(&v->v);
    if (!c) return make_nil();
    v = c->tail->force(interp);
    --n;
  }
  return v;
}

ThunkPtr map_thunk(ThunkPtr f, ThunkPtr xs, SourcePos pos) {
  return Thunk::of_fn([f, xs, pos](Interp& interp) -> ValuePtr {
    ValuePtr v = force_collection(interp, xs, "map", pos);
    const auto* c = std::get_if<ConsVal>(&v->v);
    if (!c) return make_nil();
    ThunkPtr head = c->head;
    ThunkPtr mapped = Thunk::of_fn([f, head, pos](Interp& interp2) {
      return apply(interp2, f->force(interp2), {head}, pos);
    });
    return make_cons(std::move(mapped), map_thunk(f, c->tail, pos));
  });
}

ValuePtr bi_map(Interp& interp, const std::vector<ThunkPtr>& args,
                SourcePos pos) {
  return map_thunk(args[0], args[1], pos)->force(interp);
}

ValuePtr bi_sum(Interp& interp, const std::vector<ThunkPtr>& args,
                SourcePos pos) {
  ValuePtr v = force_collection(interp, args[0], "sum", pos);
  std::int64_t acc = 0;
  while (const auto* c = std::get_if<ConsVal>(&v->v)) {
    std::int64_t n = force_int(interp, c->head, "sum", pos);
    if (__builtin_add_overflow(acc, n, &acc))
      throw EvalError("sum: integer overflow", pos);
    v = c->tail->force(interp);
  }
  return make_int(acc);
}

bool is_prime(std::int64_t m) {
  if (m < 2) return false;
  for (std::int64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

ThunkPtr primes_from(std::int64_t k) {
  return Thunk::of_fn([k](Interp&) -> ValuePtr {
    std::int64_t p = k;
    while (!is_prime(p)) ++p;
    return make_cons(Thunk::of_value(make_int(p)), primes_from(p + 1));
  });
}

}  // namespace

EnvPtr make_base_env() {
  auto frame = std::make_shared<Frame>();
  auto builtin = [&](const char* name, int min_args, int max_args,
                     ValuePtr (*fn)(Interp&, const std::vector<ThunkPtr>&,
                                    SourcePos)) {
    frame->set(name, Thunk::of_value(std::make_shared<const Value>(
        Value{BuiltinVal{name, min_args, max_args, fn}})));
  };
  builtin("+", 2, -1, bi_add);
  builtin("-", 2, -1, bi_sub);
  builtin("*", 2, -1, bi_mul);
  builtin("eq?", 2, 2, bi_eq);
  builtin("car", 1, 1, bi_car);
  builtin("cdr", 1, 1, bi_cdr);
  builtin("empty?", 1, 1, bi_empty);
  builtin("cons", 2, 2, bi_cons);
  builtin("append", 2, 2, bi_append);
  builtin("concat", 1, 1, bi_concat);
  builtin("between", 2, 2, bi_between);
  builtin("from", 1, 1, bi_from);
  builtin("take", 2, 2, bi_take);
  builtin("drop", 2, 2, bi_drop);
  builtin("map", 2, 2, bi_map);
  builtin("sum", 1, 1, bi_sum);
  frame->set("something", Thunk::of_value(make_something()));
  frame->set("primes", primes_from(2));
  return env_extend(frame, nullptr);
}

}  // namespace loopmatch
