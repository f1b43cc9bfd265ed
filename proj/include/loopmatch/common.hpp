#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace loopmatch {

struct SourcePos {
  int line = 0;
  int column = 0;
  bool known() const { return line > 0; }
};

std::string to_string(SourcePos pos);

// Base class for all interpreter diagnostics. An error aborts the current
// top-level form; the session (REPL) survives.
class Error : public std::runtime_error {
 public:
  Error(const std::string& kind, const std::string& msg, SourcePos pos);
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, SourcePos pos = {})
      : Error("parse error", msg, pos) {}
};

class EvalError : public Error {
 public:
  explicit EvalError(const std::string& msg, SourcePos pos = {})
      : Error("error", msg, pos) {}
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace loopmatch
