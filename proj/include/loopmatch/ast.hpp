#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "loopmatch/common.hpp"

namespace loopmatch {

struct Expr;
struct Pattern;
using ExprPtr = std::shared_ptr<const Expr>;
using PatternPtr = std::shared_ptr<const Pattern>;

// --- expressions -----------------------------------------------------------

struct BoolLit {
  bool value;
};
struct IntLit {
  std::int64_t value;
};
struct StrLit {
  std::string value;
};
// A variable reference, optionally subscripted: x, x_1, s_(- i 1).
// Each subscript must evaluate to an integer and selects a hash entry.
struct VarRef {
  std::string name;
  std::vector<ExprPtr> indices;
};
struct DataExpr {  // <Ctor e*>, constructor names start uppercase
  std::string ctor;
  std::vector<ExprPtr> args;
};
struct TupleExpr {
  std::vector<ExprPtr> elems;
};
struct CollectionExpr {
  std::vector<ExprPtr> elems;
};
struct HashExpr {  // {| [k e]* |}, integer keys
  std::vector<std::pair<std::int64_t, ExprPtr>> entries;
};
struct LambdaExpr {
  std::vector<std::string> params;
  ExprPtr body;
};
struct ApplyExpr {
  ExprPtr fn;
  std::vector<ExprPtr> args;
};
struct IfExpr {
  ExprPtr cond;
  ExprPtr then_branch;
  ExprPtr else_branch;
};
struct LetExpr {
  bool recursive;
  std::vector<std::pair<std::string, ExprPtr>> bindings;
  ExprPtr body;
};
struct MatchAllExpr {
  ExprPtr target;
  ExprPtr matcher;
  PatternPtr pattern;
  ExprPtr body;
};
struct MatchExpr {
  ExprPtr target;
  ExprPtr matcher;
  std::vector<std::pair<PatternPtr, ExprPtr>> clauses;
};

// --- matcher clause components ---------------------------------------------

// Pattern-patterns: the left-hand side of a matcher clause, matched against
// the pattern being resolved.
struct PpNode;
using PpPtr = std::shared_ptr<const PpNode>;
struct PpHole {};  // $
struct PpValueHole {
  std::string name;  // ,$name
};
struct PpInductive {
  std::string ctor;
  std::vector<PpPtr> args;
};
struct PpNode {
  SourcePos pos;
  std::variant<PpHole, PpValueHole, PpInductive> v;
};

// Data-patterns: destructure the target value inside a matcher clause.
struct DpNode;
using DpPtr = std::shared_ptr<const DpNode>;
struct DpVar {
  std::string name;  // $name
};
struct DpWildcard {};
struct DpInductive {
  std::string ctor;  // uppercase
  std::vector<DpPtr> args;
};
struct DpNode {
  SourcePos pos;
  std::variant<DpVar, DpWildcard, DpInductive> v;
};

struct MatcherDataClause {
  DpPtr dp;
  ExprPtr next_targets;  // evaluates to a collection of tuples
};
struct MatcherClauseAst {
  PpPtr pp;
  ExprPtr next_matchers;  // evaluates to a tuple of matchers, one per $ hole
  std::vector<MatcherDataClause> data_clauses;
};
struct MatcherExpr {
  std::vector<MatcherClauseAst> clauses;
};

struct AdmCtor {
  std::string name;  // lowercase
  std::vector<ExprPtr> arg_matchers;
};
struct AdmExpr {  // (algebraic-data-matcher {<name m*>*})
  std::vector<AdmCtor> ctors;
};

struct Expr {
  SourcePos pos;
  std::variant<BoolLit, IntLit, StrLit, VarRef, DataExpr, TupleExpr,
               CollectionExpr, HashExpr, LambdaExpr, ApplyExpr, IfExpr,
               LetExpr, MatchAllExpr, MatchExpr, MatcherExpr, AdmExpr>
      v;
};

// --- patterns ---------------------------------------------------------------

struct WildcardPat {};
struct PatVar {
  std::string name;
  std::vector<ExprPtr> indices;
};
struct ValuePat {
  ExprPtr expr;
};
struct InductivePat {
  std::string ctor;  // lowercase
  std::vector<PatternPtr> args;
};
struct OrPat {
  std::vector<PatternPtr> alts;
};
struct AndPat {
  std::vector<PatternPtr> alts;
};
struct NotPat {
  PatternPtr sub;
};
struct TuplePat {
  std::vector<PatternPtr> elems;
};
struct LetPatBinding {
  std::string name;
  std::vector<ExprPtr> indices;
  ExprPtr expr;
};
struct LetPat {
  std::vector<LetPatBinding> bindings;
  PatternPtr body;
};
// Index range fields are stored desugared: start, end numbers (an expression
// evaluating to a sorted integer collection), and the end-number pattern.
struct LoopPat {
  std::string index_var;
  ExprPtr start;
  ExprPtr ends;
  PatternPtr end_num_pat;
  PatternPtr repeat_pat;
  PatternPtr end_pat;
};
struct EllipsisPat {};

struct Pattern {
  SourcePos pos;
  std::variant<WildcardPat, PatVar, ValuePat, InductivePat, OrPat, AndPat,
               NotPat, TuplePat, LetPat, LoopPat, EllipsisPat>
      v;
};

// --- top-level forms ---------------------------------------------------------

struct TopForm {
  SourcePos pos;
  std::string define_name;  // empty for bare expressions
  ExprPtr expr;
  bool is_define() const { return !define_name.empty(); }
};

// Canonical text form. Re-parsing the output yields a structurally equal AST.
std::string to_text(const Expr& e);
std::string to_text(const Pattern& p);
std::string to_text(const PpNode& pp);
std::string to_text(const DpNode& dp);
std::string to_text(const TopForm& form);

// Checks the ellipsis discipline: every loop's repeat pattern carries exactly
// one ellipsis not enclosed by a nested loop, ellipses appear nowhere else,
// and not-patterns contain no free ellipsis. Throws ParseError.
void validate_pattern(const Pattern& p);

}  // namespace loopmatch
