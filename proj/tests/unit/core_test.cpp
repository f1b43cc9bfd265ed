#include <random>

#include "doctest.h"
#include "loopmatch/interp.hpp"
#include "loopmatch/parser.hpp"
#include "loopmatch/show.hpp"

using namespace loopmatch;

namespace {

std::string show_text(Interp& interp, const std::string& source) {
  return show(interp, interp.eval_text(source));
}

}  // namespace

TEST_CASE("force memoizes") {
  Interp interp{Options{.load_prelude = false}};
  int runs = 0;
  ThunkPtr t = Thunk::of_fn([&runs](Interp&) {
    ++runs;
    return make_int(3);
  });
  ValuePtr a = t->force(interp);
  ValuePtr b = t->force(interp);
  CHECK(runs == 1);
  CHECK(deep_equal(interp, a, b));
}

TEST_CASE("forcing the head of an infinite stream leaves the tail alone") {
  Interp interp{Options{.load_prelude = false}};
  CHECK(show_text(interp, "(car (from 1))") == "1");
  CHECK(show_text(interp, "(take 3 (from 5))") == "{5 6 7}");
}

TEST_CASE("divergent self-reference is reported") {
  Interp interp{Options{.load_prelude = false}};
  CHECK_THROWS_WITH_AS(interp.eval_text("(letrec {[$x x]} x)"),
                       doctest::Contains("divergent"), EvalError);
  // a constructor in between makes the knot productive
  CHECK(show(interp, interp.eval_text("(take 3 (letrec {[$x (cons 1 x)]} x))"))
        == "{1 1 1}");
}

TEST_CASE("deep equality") {
  Interp interp{Options{.load_prelude = false}};
  auto eq = [&](const char* a, const char* b) {
    return deep_equal(interp, interp.eval_text(a), interp.eval_text(b));
  };
  CHECK(eq("3", "3"));
  CHECK_FALSE(eq("3", "4"));
  CHECK_FALSE(eq("{1 2}", "{1 2 3}"));
  CHECK(eq("{1 2}", "{1 2}"));
  CHECK(eq("{|[1 2]|}", "{|[1 2]|}"));
  CHECK_FALSE(eq("{|[1 2]|}", "{|[1 3]|}"));
  CHECK(eq("[1 {2}]", "[1 {2}]"));
  CHECK(eq("<Edge 1 4>", "<Edge 1 4>"));
  CHECK_FALSE(eq("<Edge 1 4>", "<Leaf 1>"));
  CHECK_FALSE(eq("3", "#t"));
  CHECK_FALSE(eq("{}", "[]"));
  CHECK_THROWS_AS(eq("(lambda [$x] x)", "(lambda [$x] x)"), EvalError);
  CHECK_THROWS_AS(eq("something", "something"), EvalError);
}

TEST_CASE("bind-indexed builds and merges hashes functionally") {
  Interp interp{Options{.load_prelude = false}};
  FramePtr f0 = nullptr;
  FramePtr f1 =
      bind_indexed(interp, f0, "x", {1}, Thunk::of_value(make_int(2)));
  CHECK(show(interp, f1->find("x")->force(interp)) == "{|[1 2]|}");
  FramePtr f2 =
      bind_indexed(interp, f1, "x", {2}, Thunk::of_value(make_int(4)));
  CHECK(show(interp, f2->find("x")->force(interp)) == "{|[1 2] [2 4]|}");
  // the earlier frame is untouched
  CHECK(show(interp, f1->find("x")->force(interp)) == "{|[1 2]|}");

  // plain binding
  FramePtr f3 = bind_indexed(interp, f2, "y", {}, Thunk::of_value(make_int(7)));
  CHECK(show(interp, f3->find("y")->force(interp)) == "7");

  // multi-index bindings nest hashes
  FramePtr g =
      bind_indexed(interp, nullptr, "m", {1, 2}, Thunk::of_value(make_int(5)));
  g = bind_indexed(interp, g, "m", {1, 3}, Thunk::of_value(make_int(6)));
  CHECK(show(interp, g->find("m")->force(interp)) == "{|[1 {|[2 5] [3 6]|}]|}");

  // rebinding an index replaces the entry
  FramePtr h =
      bind_indexed(interp, f1, "x", {1}, Thunk::of_value(make_int(9)));
  CHECK(show(interp, h->find("x")->force(interp)) == "{|[1 9]|}");
}

TEST_CASE("show prints canonical forms") {
  Interp interp;
  CHECK(show_text(interp, "{}") == "{}");
  CHECK(show_text(interp, "{|[2 4] [1 2]|}") == "{|[1 2] [2 4]|}");
  CHECK(show_text(interp, "[{1} {2 3}]") == "[{1} {2 3}]");
  CHECK(show_text(interp, "<Node \"a\" {<Leaf \"b\">}>") ==
        "<Node \"a\" {<Leaf \"b\">}>");
  CHECK(show_text(interp, "\"say \\\"hi\\\"\"") == "\"say \\\"hi\\\"\"");
  CHECK(show_text(interp, "(lambda [$x] x)") == "#<closure>");
  CHECK(show_text(interp, "car") == "#<builtin>");
  CHECK(show_text(interp, "something") == "#<matcher>");
  CHECK(show_text(interp, "integer") == "#<matcher>");
}

TEST_CASE("show truncates collections at the take limit") {
  Interp interp;
  ValuePtr v = interp.eval_text("(from 1)");
  CHECK(show(interp, v, 3) == "{1 2 3 ...}");
  v = interp.eval_text("{1 2}");
  CHECK(show(interp, v, 3) == "{1 2}");
  CHECK(show(interp, v, 2) == "{1 2}");
  CHECK(show(interp, v, 1) == "{1 ...}");
  CHECK(show(interp, v, 0) == "{...}");
}

TEST_CASE("show/parse fixpoint on random literal values") {
  Interp interp;
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> small(0, 5);

  // random literal source text, depth-bounded
  std::function<std::string(int)> gen = [&](int depth) -> std::string {
    int choice = depth <= 0 ? small(rng) % 3 : small(rng);
    switch (choice) {
      case 0: return std::to_string(small(rng) * 7 - 10);
      case 1: return small(rng) % 2 ? "#t" : "#f";
      case 2: return "\"s" + std::to_string(small(rng)) + "\"";
      case 3: {
        std::string out = "{";
        int n = small(rng) % 4;
        for (int i = 0; i < n; ++i) out += (i ? " " : "") + gen(depth - 1);
        return out + "}";
      }
      case 4: {
        std::string out = "[";
        int n = 1 + small(rng) % 3;
        for (int i = 0; i < n; ++i) out += (i ? " " : "") + gen(depth - 1);
        return out + "]";
      }
      default: {
        std::string out = "{|";
        int n = small(rng) % 3;
        for (int i = 0; i < n; ++i)
          out += (i ? " [" : "[") + std::to_string(i) + " " + gen(depth - 1) +
                 "]";
        return out + "|}";
      }
    }
  };

  for (int round = 0; round < 200; ++round) {
    std::string source = gen(3);
    CAPTURE(source);
    std::string printed = show_text(interp, source);
    std::string reprinted = show_text(interp, printed);
    CHECK(printed == reprinted);
  }
}
