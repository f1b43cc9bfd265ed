#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "loopmatch/common.hpp"

namespace loopmatch {

enum class TokenKind {
  LParen,      // (
  RParen,      // )
  LAngle,      // <
  RAngle,      // >
  LBracket,    // [
  RBracket,    // ]
  LBrace,      // {
  RBrace,      // }
  LHashBrace,  // {|
  RHashBrace,  // |}
  Int,
  Str,
  Bool,
  Symbol,
  Dollar,    // $
  Comma,     // ,
  Bang,      // !
  IndexSep,  // _ immediately following an identifier, number, or )
  Wildcard,  // standalone _
  Eof,
};

struct Token {
  TokenKind kind;
  SourcePos pos;
  std::string text;
  std::int64_t int_value = 0;
  bool bool_value = false;
};

const char* token_kind_name(TokenKind kind);

// Comments (';' to end of line) and whitespace yield no tokens.
// Throws ParseError on unterminated strings and unsupported characters.
std::vector<Token> tokenize(std::string_view source);

}  // namespace loopmatch
