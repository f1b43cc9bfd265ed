#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"

namespace {

struct RunOutput {
  int exit_code;
  std::string stdout_text;
};

RunOutput run_cmd(const std::string& args) {
  std::string cmd = std::string(LM_BIN_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string corpus(const std::string& name) {
  return std::string(LM_CORPUS_DIR) + "/" + name;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  return out + "'";
}

}  // namespace

TEST_CASE("eval prints one value per line") {
  auto r = run_cmd("eval " + shell_quote("(between 1 4)"));
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text == "{1 2 3 4}\n");
}

TEST_CASE("eval the join split") {
  auto r = run_cmd(
      "eval " +
      shell_quote("(match-all {1 2 3} (list integer) [<join $xs $ys> [xs ys]])"));
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text ==
        "{[{} {1 2 3}] [{1} {2 3}] [{1 2} {3}] [{1 2 3} {}]}\n");
}

TEST_CASE("take flag truncates infinite output") {
  auto r = run_cmd("eval " + shell_quote("(from 1)") + " --take 3");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text == "{1 2 3 ...}\n");
}

TEST_CASE("run file golden outputs") {
  struct Golden {
    const char* file;
    const char* expected;
  };
  const Golden cases[] = {
      {"join.egi", "{[{} {1 2 3}] [{1} {2 3}] [{1 2} {3}] [{1 2 3} {}]}\n"},
      {"twin_primes.egi",
       "{[3 5] [5 7] [11 13] [17 19] [29 31] [41 43]}\n"},
      {"comb.egi",
       "{{1 2} {1 3} {2 3} {1 4} {2 4} {3 4}}\n"
       "{{1 2 3} {1 2 4} {1 3 4} {2 3 4}}\n"
       "{{1 2} {1 3} {2 3} {1 4} {2 4} {3 4}}\n"
       "{{1 2 3} {1 2 4} {1 3 4} {2 3 4}}\n"
       "{{1 2} {1 3} {2 3} {1 4} {2 4} {3 4} {1 2 3} {1 2 4} {1 3 4} "
       "{2 3 4}}\n"},
      {"triangle.egi", "#t\n"},
      {"sequence.egi", "#t\n"},
      {"four_queens.egi", "{{2 4 1 3} {3 1 4 2}}\n"},
      {"nqueens.egi",
       "{{|[1 2] [2 4] [3 1] [4 3]|} {|[1 3] [2 1] [3 4] [4 2]|}}\n"},
      {"tree.egi",
       "{{|[1 \"Programming language\"] [2 \"Pattern-matching-oriented\"]|} "
       "{|[1 \"Programming language\"] [2 \"Functional language\"] "
       "[3 \"Dynamically typed\"]|}}\n"},
      {"graph_path.egi", "{1 4 3 2}\n"},
      {"trips.egi", ""},
  };
  for (const Golden& g : cases) {
    CAPTURE(g.file);
    auto r = run_cmd("run " + corpus(g.file));
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text == g.expected);
  }
}

TEST_CASE("errors exit nonzero with empty stdout") {
  auto r = run_cmd("eval " + shell_quote("unbound-thing"));
  CHECK(r.exit_code == 1);
  CHECK(r.stdout_text.empty());

  r = run_cmd("eval " + shell_quote("()"));
  CHECK(r.exit_code == 1);

  r = run_cmd("run /nonexistent.egi");
  CHECK(r.exit_code == 1);
}

TEST_CASE("no-prelude mode") {
  auto r = run_cmd("eval " + shell_quote("(between 1 3)") + " --no-prelude");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text == "{1 2 3}\n");
  r = run_cmd("eval " + shell_quote("(list integer)") + " --no-prelude");
  CHECK(r.exit_code == 1);
}

TEST_CASE("dump-ast prints canonical forms without evaluating") {
  auto r = run_cmd("eval " + shell_quote("(+ 1 2)") + " --dump-ast");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text == "(+ 1 2)\n");
  r = run_cmd("eval " + shell_quote("unbound-thing") + " --dump-ast");
  CHECK(r.exit_code == 0);  // not evaluated, so no error
  CHECK(r.stdout_text == "unbound-thing\n");
}

TEST_CASE("repl keeps definitions, balances brackets, and loads files") {
  std::string script = "(define $x 21)\n(+ x\nx)\n:load " +
                       corpus("nqueens.egi") + "\n(n-queens 4)\n:quit\n";
  std::string cmd = "printf '%s' " + shell_quote(script) + " | " +
                    std::string(LM_BIN_PATH) + " repl 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), n);
  int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(out.find("42") != std::string::npos);
  // once from :load, once from the direct call
  std::string queens = "{{|[1 2] [2 4] [3 1] [4 3]|} {|[1 3] [2 1] [3 4] [4 2]|}}";
  auto first = out.find(queens);
  REQUIRE(first != std::string::npos);
  CHECK(out.find(queens, first + 1) != std::string::npos);
}

TEST_CASE("repl reports errors and continues") {
  std::string script = "(car {})\n(+ 1 2)\n:quit\n";
  std::string cmd = "printf '%s' " + shell_quote(script) + " | " +
                    std::string(LM_BIN_PATH) + " repl 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), n);
  pclose(pipe);
  CHECK(out.find("3") != std::string::npos);
}

TEST_CASE("trace goes to stderr, not stdout") {
  auto r = run_cmd("eval " + shell_quote("(match-all {1} (multiset integer) "
                                    "[<cons $x _> x])") +
                   " --trace");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text == "{1}\n");  // stderr was discarded by run_cmd
}
