#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "loopmatch/ast.hpp"
#include "loopmatch/interp.hpp"
#include "loopmatch/parser.hpp"
#include "loopmatch/show.hpp"
#include "loopmatch/token.hpp"

namespace {

using namespace loopmatch;

struct CliConfig {
  std::optional<std::int64_t> take_limit;
  bool no_prelude = false;
  bool trace = false;
  bool dump_ast = false;
};

Interp make_interp(const CliConfig& config) {
  Options options;
  options.load_prelude = !config.no_prelude;
  Interp interp(options);
  if (config.trace) {
    interp.trace = [](std::uint64_t sweep, std::size_t vectors,
                      std::size_t emitted) {
      std::cerr << "[trace] sweep=" << sweep << " vectors=" << vectors
                << " emitted=" << emitted << "\n";
    };
  }
  return interp;
}

// Runs one source unit against the session; prints one value per line.
// Returns false when a form errored.
bool run_source(Interp& interp, const std::string& source,
                const CliConfig& config) {
  try {
    if (config.dump_ast) {
      for (const TopForm& form : parse_program(source))
        std::cout << to_text(form) << "\n";
      return true;
    }
    for (const RunResult& r : interp.run(source)) {
      if (r.value)
        std::cout << show(interp, r.value, config.take_limit) << "\n";
    }
    return true;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return false;
  }
}

int run_file(const std::string& path, const CliConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open file: " << path << "\n";
    return 1;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  Interp interp = make_interp(config);
  return run_source(interp, buf.str(), config) ? 0 : 1;
}

int run_eval(const std::string& text, const CliConfig& config) {
  Interp interp = make_interp(config);
  return run_source(interp, text, config) ? 0 : 1;
}

// Net bracket depth of the source so far; negative means a stray close, which
// is reported by the parser rather than here.
int bracket_balance(const std::string& text) {
  std::vector<Token> toks;
  try {
    toks = tokenize(text);
  } catch (const Error&) {
    return 1;  // unterminated string etc: keep reading
  }
  int depth = 0;
  for (const Token& t : toks) {
    switch (t.kind) {
      case TokenKind::LParen:
      case TokenKind::LAngle:
      case TokenKind::LBracket:
      case TokenKind::LBrace:
      case TokenKind::LHashBrace: ++depth; break;
      case TokenKind::RParen:
      case TokenKind::RAngle:
      case TokenKind::RBracket:
      case TokenKind::RBrace:
      case TokenKind::RHashBrace: --depth; break;
      default: break;
    }
  }
  return depth;
}

int run_repl(const CliConfig& config) {
  Interp interp = make_interp(config);
  std::string pending;
  while (true) {
    std::cout << (pending.empty() ? "> " : "... ") << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) break;
    if (pending.empty()) {
      if (line == ":quit") break;
      if (line.rfind(":load ", 0) == 0) {
        std::string path = line.substr(6);
        std::ifstream in(path, std::ios::binary);
        if (!in) {
          std::cerr << "cannot open file: " << path << "\n";
          continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        run_source(interp, buf.str(), config);
        continue;
      }
    }
    pending += line;
    pending += "\n";
    if (bracket_balance(pending) > 0) continue;  // form not finished yet
    std::string form = std::move(pending);
    pending.clear();
    run_source(interp, form, config);
  }
  return 0;
}

void add_common_flags(CLI::App* cmd, CliConfig& config) {
  cmd->add_option("--take", config.take_limit,
                  "print at most N elements per collection")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--no-prelude", config.no_prelude,
                "start without the standard prelude");
  cmd->add_flag("--trace", config.trace,
                "print per-sweep scheduler stats to stderr");
  cmd->add_flag("--dump-ast", config.dump_ast,
                "print the parsed forms instead of evaluating");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loopmatch: pattern-matching S-expression interpreter"};
  app.require_subcommand(1);

  CliConfig config;
  std::string file_path;
  std::string eval_text;

  CLI::App* run = app.add_subcommand("run", "run a program file");
  run->add_option("file", file_path, "program file (.egi)")->required();
  add_common_flags(run, config);

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate one expression");
  eval_cmd->add_option("expr", eval_text, "expression text")->required();
  add_common_flags(eval_cmd, config);

  CLI::App* repl = app.add_subcommand("repl", "interactive session");
  add_common_flags(repl, config);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_file(file_path, config);
    if (eval_cmd->parsed()) return run_eval(eval_text, config);
    return run_repl(config);
  } catch (const loopmatch::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
