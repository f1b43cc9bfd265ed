#include "loopmatch/parser.hpp"

#include <cctype>

#include "loopmatch/token.hpp"

namespace loopmatch {

namespace {

bool starts_upper(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

ExprPtr mk_expr(SourcePos pos, auto node) {
  return std::make_shared<const Expr>(Expr{pos, std::move(node)});
}

PatternPtr mk_pat(SourcePos pos, auto node) {
  return std::make_shared<const Pattern>(Pattern{pos, std::move(node)});
}

class Parser {
 public:
  explicit Parser(std::string_view source) : toks_(tokenize(source)) {}

  std::vector<TopForm> program() {
    std::vector<TopForm> forms;
    while (peek().kind != TokenKind::Eof) forms.push_back(top_form());
    return forms;
  }

  ExprPtr single_expr() {
    ExprPtr e = expr();
    expect(TokenKind::Eof, "end of input");
    return e;
  }

  PatternPtr single_pattern() {
    PatternPtr p = pattern();
    expect(TokenKind::Eof, "end of input");
    validate_pattern(*p);
    return p;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }

  const Token& advance() { return toks_[pos_++]; }

  bool match(TokenKind kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  const Token& expect(TokenKind kind, const char* what) {
    if (peek().kind != kind)
      throw ParseError(std::string("expected ") + what + ", found " +
                           token_kind_name(peek().kind),
                       peek().pos);
    return advance();
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, peek().pos);
  }

  // --- top level -----------------------------------------------------------

  TopForm top_form() {
    const Token& t = peek();
    if (t.kind == TokenKind::RParen || t.kind == TokenKind::RAngle ||
        t.kind == TokenKind::RBracket || t.kind == TokenKind::RBrace ||
        t.kind == TokenKind::RHashBrace)
      fail("stray close bracket");
    if (t.kind == TokenKind::LParen && peek(1).kind == TokenKind::Symbol &&
        peek(1).text == "define") {
      SourcePos p = t.pos;
      advance();  // (
      advance();  // define
      expect(TokenKind::Dollar, "'$' before the defined name");
      std::string name = expect(TokenKind::Symbol, "name").text;
      ExprPtr body = expr();
      expect(TokenKind::RParen, "')'");
      return {p, name, body};
    }
    return {t.pos, "", expr()};
  }

  // --- expressions -----------------------------------------------------------

  ExprPtr expr() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Int:
        advance();
        return mk_expr(t.pos, IntLit{t.int_value});
      case TokenKind::Bool:
        advance();
        return mk_expr(t.pos, BoolLit{t.bool_value});
      case TokenKind::Str:
        advance();
        return mk_expr(t.pos, StrLit{t.text});
      case TokenKind::Symbol: {
        if (t.text == "..." || t.text == "&" || t.text == "|")
          fail("'" + t.text + "' is not valid in an expression");
        advance();
        return mk_expr(t.pos, VarRef{t.text, indices()});
      }
      case TokenKind::LAngle: return data_expr();
      case TokenKind::LBracket: return tuple_expr();
      case TokenKind::LBrace: return collection_expr();
      case TokenKind::LHashBrace: return hash_expr();
      case TokenKind::LParen: return paren_expr();
      case TokenKind::Dollar: fail("unexpected '$' in an expression");
      case TokenKind::Wildcard: fail("'_' is only valid in a pattern");
      case TokenKind::Comma: fail("',' is only valid in a pattern");
      case TokenKind::Bang: fail("'!' is only valid in a pattern");
      default: fail(std::string("expected an expression, found ") +
                    token_kind_name(t.kind));
    }
  }

  std::vector<ExprPtr> indices() {
    std::vector<ExprPtr> idx;
    while (match(TokenKind::IndexSep)) idx.push_back(index_expr());
    return idx;
  }

  ExprPtr index_expr() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Int:
        advance();
        return mk_expr(t.pos, IntLit{t.int_value});
      case TokenKind::Symbol:
        advance();
        return mk_expr(t.pos, VarRef{t.text, {}});
      case TokenKind::LParen: return expr();
      default:
        fail("expected an index: integer, identifier, or parenthesized "
             "expression");
    }
  }

  ExprPtr data_expr() {
    SourcePos p = expect(TokenKind::LAngle, "'<'").pos;
    const Token& name = expect(TokenKind::Symbol, "constructor name");
    if (!starts_upper(name.text))
      throw ParseError("data constructor '" + name.text +
                           "' must start with an uppercase letter",
                       name.pos);
    std::vector<ExprPtr> args;
    while (!match(TokenKind::RAngle)) args.push_back(expr());
    return mk_expr(p, DataExpr{name.text, std::move(args)});
  }

  ExprPtr tuple_expr() {
    SourcePos p = expect(TokenKind::LBracket, "'['").pos;
    std::vector<ExprPtr> elems;
    while (!match(TokenKind::RBracket)) elems.push_back(expr());
    return mk_expr(p, TupleExpr{std::move(elems)});
  }

  ExprPtr collection_expr() {
    SourcePos p = expect(TokenKind::LBrace, "'{'").pos;
    std::vector<ExprPtr> elems;
    while (!match(TokenKind::RBrace)) elems.push_back(expr());
    return mk_expr(p, CollectionExpr{std::move(elems)});
  }

  ExprPtr hash_expr() {
    SourcePos p = expect(TokenKind::LHashBrace, "'{|'").pos;
    std::vector<std::pair<std::int64_t, ExprPtr>> entries;
    while (!match(TokenKind::RHashBrace)) {
      expect(TokenKind::LBracket, "'[' starting a hash entry");
      const Token& k = expect(TokenKind::Int, "integer hash key");
      ExprPtr v = expr();
      expect(TokenKind::RBracket, "']'");
      entries.emplace_back(k.int_value, std::move(v));
    }
    return mk_expr(p, HashExpr{std::move(entries)});
  }

  ExprPtr paren_expr() {
    SourcePos p = expect(TokenKind::LParen, "'('").pos;
    if (peek().kind == TokenKind::RParen)
      fail("empty application is not valid");
    if (peek().kind == TokenKind::Symbol) {
      const std::string& head = peek().text;
      if (head == "lambda") return lambda_expr(p);
      if (head == "if") return if_expr(p);
      if (head == "let") return let_expr(p, false);
      if (head == "letrec") return let_expr(p, true);
      if (head == "match-all") return match_all_expr(p);
      if (head == "match") return match_expr(p);
      if (head == "matcher") return matcher_expr(p);
      if (head == "algebraic-data-matcher") return adm_expr(p);
      if (head == "define")
        fail("define is only allowed at the top level");
      if (head == "loop") fail("loop is only valid in a pattern");
    }
    ExprPtr fn = expr();
    std::vector<ExprPtr> args;
    while (!match(TokenKind::RParen)) args.push_back(expr());
    return mk_expr(p, ApplyExpr{std::move(fn), std::move(args)});
  }

  ExprPtr lambda_expr(SourcePos p) {
    advance();  // lambda
    expect(TokenKind::LBracket, "'[' starting the parameter list");
    std::vector<std::string> params;
    while (!match(TokenKind::RBracket)) {
      expect(TokenKind::Dollar, "'$' before a parameter name");
      params.push_back(expect(TokenKind::Symbol, "parameter name").text);
    }
    ExprPtr body = expr();
    expect(TokenKind::RParen, "')'");
    return mk_expr(p, LambdaExpr{std::move(params), std::move(body)});
  }

  ExprPtr if_expr(SourcePos p) {
    advance();  // if
    ExprPtr c = expr();
    ExprPtr t = expr();
    ExprPtr e = expr();
    expect(TokenKind::RParen, "')'");
    return mk_expr(p, IfExpr{std::move(c), std::move(t), std::move(e)});
  }

  ExprPtr let_expr(SourcePos p, bool recursive) {
    advance();  // let / letrec
    expect(TokenKind::LBrace, "'{' starting the binding list");
    std::vector<std::pair<std::string, ExprPtr>> bindings;
    while (!match(TokenKind::RBrace)) {
      expect(TokenKind::LBracket, "'[' starting a binding");
      expect(TokenKind::Dollar, "'$' before the bound name");
      std::string name = expect(TokenKind::Symbol, "name").text;
      ExprPtr e = expr();
      expect(TokenKind::RBracket, "']'");
      bindings.emplace_back(std::move(name), std::move(e));
    }
    ExprPtr body = expr();
    expect(TokenKind::RParen, "')'");
    return mk_expr(p, LetExpr{recursive, std::move(bindings), std::move(body)});
  }

  ExprPtr match_all_expr(SourcePos p) {
    advance();  // match-all
    ExprPtr target = expr();
    ExprPtr matcher = expr();
    expect(TokenKind::LBracket, "'[' starting the match clause");
    PatternPtr pat = pattern();
    validate_pattern(*pat);
    ExprPtr body = expr();
    expect(TokenKind::RBracket, "']'");
    expect(TokenKind::RParen, "')'");
    return mk_expr(p, MatchAllExpr{std::move(target), std::move(matcher),
                                   std::move(pat), std::move(body)});
  }

  ExprPtr match_expr(SourcePos p) {
    advance();  // match
    ExprPtr target = expr();
    ExprPtr matcher = expr();
    expect(TokenKind::LBrace, "'{' starting the clause list");
    std::vector<std::pair<PatternPtr, ExprPtr>> clauses;
    while (!match(TokenKind::RBrace)) {
      expect(TokenKind::LBracket, "'[' starting a match clause");
      PatternPtr pat = pattern();
      validate_pattern(*pat);
      ExprPtr body = expr();
      expect(TokenKind::RBracket, "']'");
      clauses.emplace_back(std::move(pat), std::move(body));
    }
    if (clauses.empty()) fail("match requires at least one clause");
    expect(TokenKind::RParen, "')'");
    return mk_expr(p, MatchExpr{std::move(target), std::move(matcher),
                                std::move(clauses)});
  }

  ExprPtr matcher_expr(SourcePos p) {
    advance();  // matcher
    expect(TokenKind::LBrace, "'{' starting the matcher clauses");
    std::vector<MatcherClauseAst> clauses;
    while (!match(TokenKind::RBrace)) {
      expect(TokenKind::LBracket, "'[' starting a matcher clause");
      PpPtr pp = pattern_pattern();
      ExprPtr next_matchers = expr();
      expect(TokenKind::LBrace, "'{' starting the data clauses");
      std::vector<MatcherDataClause> data;
      while (!match(TokenKind::RBrace)) {
        expect(TokenKind::LBracket, "'[' starting a data clause");
        DpPtr dp = data_pattern();
        ExprPtr next = expr();
        expect(TokenKind::RBracket, "']'");
        data.push_back({std::move(dp), std::move(next)});
      }
      expect(TokenKind::RBracket, "']'");
      clauses.push_back(
          {std::move(pp), std::move(next_matchers), std::move(data)});
    }
    expect(TokenKind::RParen, "')'");
    return mk_expr(p, MatcherExpr{std::move(clauses)});
  }

  ExprPtr adm_expr(SourcePos p) {
    advance();  // algebraic-data-matcher
    expect(TokenKind::LBrace, "'{' starting the constructor specs");
    std::vector<AdmCtor> ctors;
    while (!match(TokenKind::RBrace)) {
      expect(TokenKind::LAngle, "'<' starting a constructor spec");
      const Token& name = expect(TokenKind::Symbol, "constructor name");
      if (starts_upper(name.text))
        throw ParseError("pattern constructor '" + name.text +
                             "' must start with a lowercase letter",
                         name.pos);
      std::vector<ExprPtr> args;
      while (!match(TokenKind::RAngle)) args.push_back(expr());
      ctors.push_back({name.text, std::move(args)});
    }
    expect(TokenKind::RParen, "')'");
    return mk_expr(p, AdmExpr{std::move(ctors)});
  }

  // --- patterns ---------------------------------------------------------------

  PatternPtr pattern() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Wildcard:
        advance();
        return mk_pat(t.pos, WildcardPat{});
      case TokenKind::Dollar: {
        advance();
        const Token& name = expect(TokenKind::Symbol, "pattern variable name");
        return mk_pat(t.pos, PatVar{name.text, indices()});
      }
      case TokenKind::Comma: {
        advance();
        return mk_pat(t.pos, ValuePat{expr()});
      }
      case TokenKind::Bang: {
        advance();
        return mk_pat(t.pos, NotPat{pattern()});
      }
      case TokenKind::Symbol:
        if (t.text == "...") {
          advance();
          return mk_pat(t.pos, EllipsisPat{});
        }
        fail("unexpected identifier in a pattern; write ,x for a value "
             "pattern or $x for a pattern variable");
      case TokenKind::LAngle: return inductive_pattern();
      case TokenKind::LBracket: return tuple_pattern();
      case TokenKind::LParen: return paren_pattern();
      default:
        fail(std::string("expected a pattern, found ") +
             token_kind_name(t.kind));
    }
  }

  PatternPtr inductive_pattern() {
    SourcePos p = expect(TokenKind::LAngle, "'<'").pos;
    const Token& name = expect(TokenKind::Symbol, "pattern constructor name");
    if (starts_upper(name.text))
      throw ParseError("pattern constructor '" + name.text +
                           "' must start with a lowercase letter",
                       name.pos);
    std::vector<PatternPtr> args;
    while (!match(TokenKind::RAngle)) args.push_back(pattern());
    return mk_pat(p, InductivePat{name.text, std::move(args)});
  }

  PatternPtr tuple_pattern() {
    SourcePos p = expect(TokenKind::LBracket, "'['").pos;
    std::vector<PatternPtr> elems;
    while (!match(TokenKind::RBracket)) elems.push_back(pattern());
    return mk_pat(p, TuplePat{std::move(elems)});
  }

  PatternPtr paren_pattern() {
    SourcePos p = expect(TokenKind::LParen, "'('").pos;
    const Token& head = peek();
    if (head.kind == TokenKind::Symbol && head.text == "|") {
      advance();
      std::vector<PatternPtr> alts;
      while (!match(TokenKind::RParen)) alts.push_back(pattern());
      return mk_pat(p, OrPat{std::move(alts)});
    }
    if (head.kind == TokenKind::Symbol && head.text == "&") {
      advance();
      std::vector<PatternPtr> alts;
      while (!match(TokenKind::RParen)) alts.push_back(pattern());
      return mk_pat(p, AndPat{std::move(alts)});
    }
    if (head.kind == TokenKind::Symbol && head.text == "loop")
      return loop_pattern(p);
    if (head.kind == TokenKind::Symbol && head.text == "let")
      return let_pattern(p);
    fail("expected (| ...), (& ...), (loop ...), or (let ...) in a pattern");
  }

  PatternPtr let_pattern(SourcePos p) {
    advance();  // let
    expect(TokenKind::LBrace, "'{' starting the binding list");
    std::vector<LetPatBinding> bindings;
    while (!match(TokenKind::RBrace)) {
      expect(TokenKind::LBracket, "'[' starting a binding");
      expect(TokenKind::Dollar, "'$' before the bound name");
      std::string name = expect(TokenKind::Symbol, "name").text;
      std::vector<ExprPtr> idx = indices();
      ExprPtr e = expr();
      expect(TokenKind::RBracket, "']'");
      bindings.push_back({std::move(name), std::move(idx), std::move(e)});
    }
    PatternPtr body = pattern();
    expect(TokenKind::RParen, "')'");
    return mk_pat(p, LetPat{std::move(bindings), std::move(body)});
  }

  // True when the upcoming tokens open a pattern rather than an expression:
  // the pattern-only markers $, _, ,, !, (&, (|.
  bool second_range_slot_is_pattern() {
    switch (peek().kind) {
      case TokenKind::Dollar:
      case TokenKind::Wildcard:
      case TokenKind::Comma:
      case TokenKind::Bang:
        return true;
      case TokenKind::LParen:
        return peek(1).kind == TokenKind::Symbol &&
               (peek(1).text == "&" || peek(1).text == "|");
      default:
        return false;
    }
  }

  PatternPtr loop_pattern(SourcePos p) {
    advance();  // loop
    expect(TokenKind::Dollar, "'$' before the index variable");
    std::string index_var = expect(TokenKind::Symbol, "index variable").text;

    // Index range: [start], [start ends], [start end-pattern], or
    // [start ends end-pattern]; missing pieces are filled in here.
    SourcePos rp = expect(TokenKind::LBracket, "'[' starting the index range").pos;
    ExprPtr start = expr();
    ExprPtr ends;
    PatternPtr end_num_pat;
    if (peek().kind != TokenKind::RBracket) {
      if (second_range_slot_is_pattern()) {
        end_num_pat = pattern();
      } else {
        ExprPtr e = expr();
        if (peek().kind != TokenKind::RBracket) {
          // three-component form: ends taken as written
          ends = e;
          end_num_pat = pattern();
        } else if (std::holds_alternative<CollectionExpr>(e->v)) {
          ends = e;
        } else {
          // a single end number becomes a one-element collection
          ends = mk_expr(e->pos, CollectionExpr{{e}});
        }
      }
    }
    if (peek().kind != TokenKind::RBracket)
      throw ParseError("an index range has at most three components", rp);
    advance();  // ]
    if (!ends) {
      ExprPtr from = mk_expr(rp, VarRef{"from", {}});
      ends = mk_expr(rp, ApplyExpr{std::move(from), {start}});
    }
    if (!end_num_pat) end_num_pat = mk_pat(rp, WildcardPat{});

    PatternPtr repeat = pattern();
    PatternPtr end = pattern();
    expect(TokenKind::RParen, "')'");
    return mk_pat(p, LoopPat{std::move(index_var), std::move(start),
                             std::move(ends), std::move(end_num_pat),
                             std::move(repeat), std::move(end)});
  }

  // --- pattern-patterns and data-patterns ------------------------------------

  PpPtr pattern_pattern() {
    const Token& t = peek();
    if (t.kind == TokenKind::Dollar) {
      advance();
      return std::make_shared<const PpNode>(PpNode{t.pos, PpHole{}});
    }
    if (t.kind == TokenKind::Comma) {
      advance();
      expect(TokenKind::Dollar, "'$' in a value hole ,$name");
      const Token& name = expect(TokenKind::Symbol, "value hole name");
      return std::make_shared<const PpNode>(
          PpNode{t.pos, PpValueHole{name.text}});
    }
    if (t.kind == TokenKind::LAngle) {
      advance();
      const Token& name = expect(TokenKind::Symbol, "pattern constructor name");
      if (starts_upper(name.text))
        throw ParseError("pattern constructor '" + name.text +
                             "' must start with a lowercase letter",
                         name.pos);
      std::vector<PpPtr> args;
      while (!match(TokenKind::RAngle)) args.push_back(pattern_pattern());
      return std::make_shared<const PpNode>(
          PpNode{t.pos, PpInductive{name.text, std::move(args)}});
    }
    fail("expected a pattern-pattern: $, ,$name, or <ctor pp*>");
  }

  DpPtr data_pattern() {
    const Token& t = peek();
    if (t.kind == TokenKind::Dollar) {
      advance();
      const Token& name = expect(TokenKind::Symbol, "data pattern variable");
      return std::make_shared<const DpNode>(DpNode{t.pos, DpVar{name.text}});
    }
    if (t.kind == TokenKind::Wildcard) {
      advance();
      return std::make_shared<const DpNode>(DpNode{t.pos, DpWildcard{}});
    }
    if (t.kind == TokenKind::LAngle) {
      advance();
      const Token& name = expect(TokenKind::Symbol, "data constructor name");
      if (!starts_upper(name.text))
        throw ParseError("data constructor '" + name.text +
                             "' must start with an uppercase letter",
                         name.pos);
      std::vector<DpPtr> args;
      while (!match(TokenKind::RAngle)) args.push_back(data_pattern());
      return std::make_shared<const DpNode>(
          DpNode{t.pos, DpInductive{name.text, std::move(args)}});
    }
    fail("expected a data pattern: $name, _, or <Ctor dp*>");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<TopForm> parse_program(std::string_view source) {
  return Parser(source).program();
}

ExprPtr parse_expr_text(std::string_view source) {
  return Parser(source).single_expr();
}

PatternPtr parse_pattern_text(std::string_view source) {
  return Parser(source).single_pattern();
}

}  // namespace loopmatch
