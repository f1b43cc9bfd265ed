#include "doctest.h"
#include "loopmatch/interp.hpp"
#include "loopmatch/prelude.hpp"
#include "loopmatch/show.hpp"

using namespace loopmatch;

TEST_CASE("prelude loads cleanly and binds every export") {
  Interp interp;
  for (const std::string& name : prelude_exports()) {
    CAPTURE(name);
    CHECK(env_lookup(interp.session_env(), name) != nullptr);
  }
}

TEST_CASE("sessions without the prelude still have builtins") {
  Interp interp{Options{.load_prelude = false}};
  CHECK(show(interp, interp.eval_text("(between 1 4)")) == "{1 2 3 4}");
  CHECK(env_lookup(interp.session_env(), "list") == nullptr);
  CHECK(env_lookup(interp.session_env(), "something") != nullptr);
}

TEST_CASE("multiset enumeration order follows deletion order") {
  Interp interp;
  CHECK(show(interp, interp.eval_text(
                         "(match-all {1 2 3} (multiset integer) "
                         "[<cons $x _> x])")) == "{1 2 3}");
}

TEST_CASE("multiset value patterns compare regardless of order") {
  Interp interp;
  CHECK(show(interp, interp.eval_text(
                         "(match {2 1 3} (multiset integer) "
                         "{[,{1 2 3} #t] [_ #f]})")) == "#t");
  CHECK(show(interp, interp.eval_text(
                         "(match {2 1} (multiset integer) "
                         "{[,{1 2 3} #t] [_ #f]})")) == "#f");
  CHECK(show(interp, interp.eval_text(
                         "(match {1 1 2} (multiset integer) "
                         "{[,{1 2 2} #t] [_ #f]})")) == "#f");
}

TEST_CASE("list value patterns are order sensitive") {
  Interp interp;
  CHECK(show(interp, interp.eval_text("(match {1 2} (list integer) "
                                      "{[,{1 2} #t] [_ #f]})")) == "#t");
  CHECK(show(interp, interp.eval_text("(match {2 1} (list integer) "
                                      "{[,{1 2} #t] [_ #f]})")) == "#f");
}

TEST_CASE("string matcher value clause") {
  Interp interp;
  CHECK(show(interp, interp.eval_text(
                         "(match \"Tokyo\" string "
                         "{[,\"Tokyo\" #t] [_ #f]})")) == "#t");
  CHECK(show(interp, interp.eval_text(
                         "(match-all \"Tokyo\" string [$s s])")) ==
        "{\"Tokyo\"}");
}

TEST_CASE("nil clauses require the collection to be empty") {
  Interp interp;
  CHECK(show(interp, interp.eval_text("(match {} (list integer) "
                                      "{[<nil> #t] [_ #f]})")) == "#t");
  CHECK(show(interp, interp.eval_text("(match {1} (multiset integer) "
                                      "{[<nil> #t] [_ #f]})")) == "#f");
}

TEST_CASE("splits enumerates prefixes shortest first") {
  Interp interp;
  CHECK(show(interp, interp.eval_text("(splits {1 2})")) ==
        "{[{} {1 2}] [{1} {2}] [{1 2} {}]}");
  CHECK(show(interp, interp.eval_text("(splits {})")) == "{[{} {}]}");
}

TEST_CASE("comb via loop patterns") {
  Interp interp;
  CHECK(show(interp, interp.eval_text("(comb 2 {1 2 3 4})")) ==
        "{{1 2} {1 3} {2 3} {1 4} {2 4} {3 4}}");
  CHECK(show(interp, interp.eval_text("(comb 0 {1 2})")) == "{{}}");
  CHECK(show(interp, interp.eval_text("(comb 3 {1 2})")) == "{}");
}
