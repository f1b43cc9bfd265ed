#include <algorithm>
#include <random>

#include "doctest.h"
#include "loopmatch/interp.hpp"
#include "loopmatch/show.hpp"

using namespace loopmatch;

namespace {

std::string show_text(Interp& interp, const std::string& source) {
  return show(interp, interp.eval_text(source));
}

}  // namespace

TEST_CASE("arithmetic and application") {
  Interp interp;
  CHECK(show_text(interp, "(+ 1 2)") == "3");
  CHECK(show_text(interp, "(- 10 3 2)") == "5");
  CHECK(show_text(interp, "(* 2 3 4)") == "24");
  CHECK(show_text(interp, "((lambda [$x $y] (+ x y)) 3 4)") == "7");
  CHECK_THROWS_WITH_AS(interp.eval_text("((lambda [$x] x) 1 2)"),
                       doctest::Contains("arguments"), EvalError);
  CHECK_THROWS_AS(interp.eval_text("(1 2)"), EvalError);
  CHECK_THROWS_WITH_AS(interp.eval_text("(if 1 2 3)"),
                       doctest::Contains("boolean"), EvalError);
  CHECK_THROWS_WITH_AS(
      interp.eval_text("(* 9223372036854775807 2)"),
      doctest::Contains("overflow"), EvalError);
}

TEST_CASE("indexed variable references read hashes") {
  Interp interp;
  interp.run("(define $x {|[1 2] [2 4]|})");
  CHECK(show_text(interp, "x_2") == "4");
  CHECK(show_text(interp, "x_1") == "2");
  CHECK_THROWS_WITH_AS(interp.eval_text("x_5"), doctest::Contains("x_5"),
                       EvalError);
  CHECK_THROWS_WITH_AS(interp.eval_text("y_1"), doctest::Contains("unbound"),
                       EvalError);
  interp.run("(define $n 1)");
  CHECK_THROWS_WITH_AS(interp.eval_text("n_1"), doctest::Contains("hash"),
                       EvalError);
}

TEST_CASE("defines are recursive and shadowable") {
  Interp interp;
  interp.run(
      "(define $f (lambda [$n] (if (eq? n 0) 1 (* n (f (- n 1))))))");
  CHECK(show_text(interp, "(f 5)") == "120");

  // mutual recursion across successive defines
  interp.run(
      "(define $even? (lambda [$n] (if (eq? n 0) #t (odd? (- n 1)))))"
      "(define $odd? (lambda [$n] (if (eq? n 0) #f (even? (- n 1)))))");
  CHECK(show_text(interp, "(even? 10)") == "#t");
  CHECK(show_text(interp, "(odd? 7)") == "#t");

  interp.run("(define $x 1)");
  interp.run("(define $x 2)");
  CHECK(show_text(interp, "x") == "2");
}

TEST_CASE("let binds sequentially, letrec ties the knot") {
  Interp interp;
  CHECK(show_text(interp, "(let {[$s 1] [$e (+ s 1)]} [s e])") == "[1 2]");
  CHECK(show_text(interp,
                  "(letrec {[$f (lambda [$n] (if (eq? n 0) 0 (g (- n 1))))]"
                  "         [$g (lambda [$n] (if (eq? n 0) 1 (f (- n 1))))]}"
                  "  [(f 4) (f 5)])") == "[0 1]");
}

TEST_CASE("match-all over finite targets") {
  Interp interp;
  CHECK(show_text(interp,
                  "(match-all {1 2 3} (list integer) "
                  "[<join $xs $ys> [xs ys]])") ==
        "{[{} {1 2 3}] [{1} {2 3}] [{1 2} {3}] [{1 2 3} {}]}");
  CHECK(show_text(interp,
                  "(match-all {} (list integer) [<cons $x _> x])") == "{}");
  CHECK(show_text(interp,
                  "(match-all (between 1 10) (multiset integer) "
                  "[<cons $x <cons ,x <cons ,x _>>> x])") == "{}");
}

TEST_CASE("match picks the first clause with a result") {
  Interp interp;
  CHECK(show_text(interp,
                  "(match {1 2 3} (list integer) "
                  "{[<cons $x _> x] [_ 99]})") == "1");
  CHECK(show_text(interp,
                  "(match {} (list integer) "
                  "{[<cons $x _> x] [_ 99]})") == "99");
  CHECK_THROWS_WITH_AS(
      interp.eval_text("(match {} (list integer) {[<cons $x _> x]})"),
      doctest::Contains("no matching clause"), EvalError);
}

TEST_CASE("match agrees with car of match-all when the first clause hits") {
  Interp interp;
  const char* patterns[] = {"<cons $r _>", "<join $r _>", "$r",
                            "<join _ <cons $r _>>"};
  for (const char* p : patterns) {
    CAPTURE(p);
    std::string m = show_text(
        interp, std::string("(match {1 2 3 4} (list integer) {[") + p +
                    " r]})");
    std::string ma = show_text(
        interp, std::string("(car (match-all {1 2 3 4} (list integer) [") +
                    p + " r]))");
    CHECK(m == ma);
  }
}

TEST_CASE("matcher expressions build matchers without evaluating clauses") {
  Interp interp;
  CHECK(show_text(interp,
                  "(matcher {[,$val [] {[$tgt (if (eq? val tgt) {[]} {})]}]"
                  "          [$ [something] {[$tgt {[tgt]}]}]})") ==
        "#<matcher>");
  // the prelude list applied to integer is a matcher
  CHECK(show_text(interp, "(list integer)") == "#<matcher>");
  CHECK(show_text(interp, "(multiset (list integer))") == "#<matcher>");
}

TEST_CASE("algebraic-data-matcher") {
  Interp interp;
  interp.run(
      "(define $tree (algebraic-data-matcher "
      "{<leaf string> <node string (multiset tree)>}))");
  CHECK(show_text(interp,
                  "(match <Leaf \"Egison\"> tree "
                  "{[<leaf ,\"Egison\"> #t] [_ #f]})") == "#t");
  CHECK(show_text(interp,
                  "(match <Node \"x\" {}> tree "
                  "{[<leaf ,\"Egison\"> #t] [_ #f]})") == "#f");
  // value clause: whole-value equality with no bindings
  CHECK(show_text(interp,
                  "(match <Leaf \"x\"> tree "
                  "{[,<Leaf \"x\"> #t] [_ #f]})") == "#t");

  interp.run(
      "(define $edge (algebraic-data-matcher {<edge integer integer>}))");
  CHECK(show_text(interp,
                  "(match <Edge 1 4> edge {[<edge ,1 $y> y] [_ 0]})") == "4");

  CHECK_THROWS_WITH_AS(
      interp.eval_text(
          "(algebraic-data-matcher {<leaf string> <leaf integer>})"),
      doctest::Contains("duplicate"), EvalError);
}

TEST_CASE("builtin collection functions") {
  Interp interp;
  CHECK(show_text(interp, "(between 1 4)") == "{1 2 3 4}");
  CHECK(show_text(interp, "(between 3 2)") == "{}");
  CHECK(show_text(interp, "(take 2 (from 5))") == "{5 6}");
  CHECK(show_text(interp, "(sum {200 160 220})") == "580");
  CHECK(show_text(interp, "(append {1 2} {3})") == "{1 2 3}");
  CHECK(show_text(interp, "(concat {{1} {} {2 3}})") == "{1 2 3}");
  CHECK(show_text(interp, "(cons 0 {1})") == "{0 1}");
  CHECK(show_text(interp, "(car {7 8})") == "7");
  CHECK(show_text(interp, "(cdr {7 8})") == "{8}");
  CHECK(show_text(interp, "(empty? {})") == "#t");
  CHECK_THROWS_WITH_AS(interp.eval_text("(car {})"),
                       doctest::Contains("empty"), EvalError);
  CHECK_THROWS_AS(interp.eval_text("(car 5)"), EvalError);
}

TEST_CASE("prelude take and drop match the host behaviour") {
  Interp interp;
  for (int len = 0; len <= 8; ++len) {
    std::string xs = "{";
    for (int i = 1; i <= len; ++i) xs += (i > 1 ? " " : "") + std::to_string(i);
    xs += "}";
    for (int n = 0; n <= 8; ++n) {
      CAPTURE(len);
      CAPTURE(n);
      std::string take_expected = "{";
      for (int i = 1; i <= std::min(n, len); ++i)
        take_expected += (i > 1 ? " " : "") + std::to_string(i);
      take_expected += "}";
      if (n > len) take_expected = xs;  // fallback clause returns xs itself
      std::string drop_expected = "{";
      for (int i = n + 1; i <= len; ++i)
        drop_expected += (i > n + 1 ? " " : "") + std::to_string(i);
      drop_expected += "}";

      CHECK(show_text(interp, "(take " + std::to_string(n) + " " + xs + ")") ==
            take_expected);
      CHECK(show_text(interp, "(drop " + std::to_string(n) + " " + xs + ")") ==
            drop_expected);
    }
  }
}

TEST_CASE("prelude map agrees with a direct host mapping") {
  Interp interp;
  std::mt19937 rng(7);
  for (int round = 0; round < 20; ++round) {
    int len = static_cast<int>(rng() % 7);
    std::string xs = "{";
    std::string expected = "{";
    for (int i = 0; i < len; ++i) {
      int v = static_cast<int>(rng() % 20);
      xs += (i ? " " : "") + std::to_string(v);
      expected += (i ? " " : "") + std::to_string(v * 2 + 1);
    }
    xs += "}";
    expected += "}";
    CAPTURE(xs);
    CHECK(show_text(interp, "(map (lambda [$x] (+ (* 2 x) 1)) " + xs + ")") ==
          expected);
  }
}

TEST_CASE("twin primes stream") {
  Interp interp;
  CHECK(show_text(interp, "(take 6 twin-primes)") ==
        "{[3 5] [5 7] [11 13] [17 19] [29 31] [41 43]}");
}
