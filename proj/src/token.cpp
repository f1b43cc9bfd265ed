#include "loopmatch/token.hpp"

#include <cctype>
#include <limits>

namespace loopmatch {

std::string to_string(SourcePos pos) {
  if (!pos.known()) return "?:?";
  return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

Error::Error(const std::string& kind, const std::string& msg, SourcePos pos)
    : std::runtime_error(pos.known() ? to_string(pos) + ": " + kind + ": " + msg
                                     : kind + ": " + msg),
      pos_(pos) {}

const char* token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LAngle: return "'<'";
    case TokenKind::RAngle: return "'>'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LHashBrace: return "'{|'";
    case TokenKind::RHashBrace: return "'|}'";
    case TokenKind::Int: return "integer";
    case TokenKind::Str: return "string";
    case TokenKind::Bool: return "boolean";
    case TokenKind::Symbol: return "identifier";
    case TokenKind::Dollar: return "'$'";
    case TokenKind::Comma: return "','";
    case TokenKind::Bang: return "'!'";
    case TokenKind::IndexSep: return "'_' index";
    case TokenKind::Wildcard: return "'_'";
    case TokenKind::Eof: return "end of input";
  }
  return "?";
}

namespace {

bool is_symbol_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '+' ||
         c == '*' || c == '/' || c == '?' || c == '=';
}

bool is_delimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
         c == '<' || c == '>' || c == '[' || c == ']' || c == '{' ||
         c == '}' || c == ';' || c == '|' || c == '_' || c == ',' || c == '"';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (c == ';') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
        continue;
      }
      out.push_back(next_token());
    }
    out.push_back({TokenKind::Eof, pos(), ""});
    return out;
  }

 private:
  SourcePos pos() const { return {line_, col_}; }

  void advance(std::size_t n = 1) {
    while (n--) {
      if (src_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++i_;
    }
  }

  char peek(std::size_t ahead = 1) const {
    return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
  }

  Token simple(TokenKind kind, std::size_t len) {
    Token t{kind, pos(), std::string(src_.substr(i_, len))};
    advance(len);
    return t;
  }

  Token next_token() {
    SourcePos p = pos();
    char c = src_[i_];
    switch (c) {
      case '(': return simple(TokenKind::LParen, 1);
      case ')': return simple(TokenKind::RParen, 1);
      case '<': return simple(TokenKind::LAngle, 1);
      case '>': return simple(TokenKind::RAngle, 1);
      case '[': return simple(TokenKind::LBracket, 1);
      case ']': return simple(TokenKind::RBracket, 1);
      case '{':
        return peek() == '|' ? simple(TokenKind::LHashBrace, 2)
                             : simple(TokenKind::LBrace, 1);
      case '}': return simple(TokenKind::RBrace, 1);
      case '|':
        if (peek() == '}') return simple(TokenKind::RHashBrace, 2);
        return simple(TokenKind::Symbol, 1);
      case '&': return simple(TokenKind::Symbol, 1);
      case '$': return simple(TokenKind::Dollar, 1);
      case ',': return simple(TokenKind::Comma, 1);
      case '!': return simple(TokenKind::Bang, 1);
      case '_': {
        // An underscore glued to the end of an identifier, number, or index
        // expression separates a subscript; otherwise it is the wildcard.
        bool adjacent =
            i_ > 0 && (is_symbol_char(src_[i_ - 1]) || src_[i_ - 1] == ')');
        return simple(adjacent ? TokenKind::IndexSep : TokenKind::Wildcard, 1);
      }
      case '@': throw ParseError("'@' is reserved", p);
      case '"': return lex_string();
      case '#': return lex_bool();
      case '.': {
        if (peek() == '.' && peek(2) == '.' && peek(3) != '.')
          return simple(TokenKind::Symbol, 3);
        throw ParseError("unexpected '.'", p);
      }
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && std::isdigit(static_cast<unsigned char>(peek()))))
      return lex_int();
    if (is_symbol_char(c)) return lex_symbol();
    throw ParseError(std::string("unsupported character '") + c + "'", p);
  }

  Token lex_string() {
    SourcePos p = pos();
    advance();  // opening quote
    std::string text;
    while (true) {
      if (i_ >= src_.size()) throw ParseError("unterminated string", p);
      char c = src_[i_];
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        char esc = peek();
        switch (esc) {
          case '"': text += '"'; break;
          case '\\': text += '\\'; break;
          case 'n': text += '\n'; break;
          case 't': text += '\t'; break;
          default: throw ParseError("unknown string escape", pos());
        }
        advance(2);
        continue;
      }
      text += c;
      advance();
    }
    Token t{TokenKind::Str, p, std::move(text)};
    return t;
  }

  Token lex_bool() {
    SourcePos p = pos();
    char c = peek();
    if ((c == 't' || c == 'f') && (i_ + 2 >= src_.size() ||
                                   is_delimiter(src_[i_ + 2]))) {
      Token t{TokenKind::Bool, p, c == 't' ? "#t" : "#f"};
      t.bool_value = c == 't';
      advance(2);
      return t;
    }
    throw ParseError("expected #t or #f", p);
  }

  Token lex_int() {
    SourcePos p = pos();
    bool negative = src_[i_] == '-';
    std::size_t start = i_;
    if (negative) advance();
    std::int64_t n = 0;
    while (i_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[i_]))) {
      int digit = src_[i_] - '0';
      if (n > (std::numeric_limits<std::int64_t>::max() - digit) / 10)
        throw ParseError("integer literal out of range", p);
      n = n * 10 + digit;
      advance();
    }
    Token t{TokenKind::Int, p, std::string(src_.substr(start, i_ - start))};
    t.int_value = negative ? -n : n;
    return t;
  }

  Token lex_symbol() {
    SourcePos p = pos();
    std::size_t start = i_;
    while (i_ < src_.size() && is_symbol_char(src_[i_])) advance();
    return {TokenKind::Symbol, p, std::string(src_.substr(start, i_ - start))};
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
  return Lexer(source).run();
}

}  // namespace loopmatch
