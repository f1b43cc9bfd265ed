#include "loopmatch/ast.hpp"

#include <sstream>

namespace loopmatch {

namespace {

void print_expr(std::ostream& os, const Expr& e);
void print_pattern(std::ostream& os, const Pattern& p);
void print_pp(std::ostream& os, const PpNode& pp);
void print_dp(std::ostream& os, const DpNode& dp);

void print_string_lit(std::ostream& os, const std::string& s) {
  os << '"';
  for (char c : s) {
    switch (c) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      default: os << c;
    }
  }
  os << '"';
}

template <class T, class F>
void print_list(std::ostream& os, const std::vector<T>& xs, F f,
                const char* sep = " ") {
  bool first = true;
  for (const auto& x : xs) {
    if (!first) os << sep;
    first = false;
    f(x);
  }
}

void print_index(std::ostream& os, const Expr& e) {
  // Bare integers and plain identifiers need no parentheses after '_'.
  if (std::holds_alternative<IntLit>(e.v)) {
    print_expr(os, e);
    return;
  }
  if (const auto* var = std::get_if<VarRef>(&e.v); var && var->indices.empty()) {
    print_expr(os, e);
    return;
  }
  if (std::holds_alternative<ApplyExpr>(e.v)) {
    print_expr(os, e);  // applications already print parenthesized
    return;
  }
  os << '(';
  print_expr(os, e);
  os << ')';
}

void print_indices(std::ostream& os, const std::vector<ExprPtr>& indices) {
  for (const auto& ix : indices) {
    os << '_';
    print_index(os, *ix);
  }
}

void print_expr(std::ostream& os, const Expr& e) {
  std::visit(
      overloaded{
          [&](const BoolLit& b) { os << (b.value ? "#t" : "#f"); },
          [&](const IntLit& i) { os << i.value; },
          [&](const StrLit& s) { print_string_lit(os, s.value); },
          [&](const VarRef& v) {
            os << v.name;
            print_indices(os, v.indices);
          },
          [&](const DataExpr& d) {
            os << '<' << d.ctor;
            for (const auto& a : d.args) {
              os << ' ';
              print_expr(os, *a);
            }
            os << '>';
          },
          [&](const TupleExpr& t) {
            os << '[';
            print_list(os, t.elems, [&](const ExprPtr& x) { print_expr(os, *x); });
            os << ']';
          },
          [&](const CollectionExpr& c) {
            os << '{';
            print_list(os, c.elems, [&](const ExprPtr& x) { print_expr(os, *x); });
            os << '}';
          },
          [&](const HashExpr& h) {
            os << "{|";
            print_list(os, h.entries, [&](const auto& kv) {
              os << '[' << kv.first << ' ';
              print_expr(os, *kv.second);
              os << ']';
            });
            os << "|}";
          },
          [&](const LambdaExpr& l) {
            os << "(lambda [";
            print_list(os, l.params,
                       [&](const std::string& s) { os << '$' << s; });
            os << "] ";
            print_expr(os, *l.body);
            os << ')';
          },
          [&](const ApplyExpr& a) {
            os << '(';
            print_expr(os, *a.fn);
            for (const auto& arg : a.args) {
              os << ' ';
              print_expr(os, *arg);
            }
            os << ')';
          },
          [&](const IfExpr& i) {
            os << "(if ";
            print_expr(os, *i.cond);
            os << ' ';
            print_expr(os, *i.then_branch);
            os << ' ';
            print_expr(os, *i.else_branch);
            os << ')';
          },
          [&](const LetExpr& l) {
            os << (l.recursive ? "(letrec {" : "(let {");
            print_list(os, l.bindings, [&](const auto& b) {
              os << "[$" << b.first << ' ';
              print_expr(os, *b.second);
              os << ']';
            });
            os << "} ";
            print_expr(os, *l.body);
            os << ')';
          },
          [&](const MatchAllExpr& m) {
            os << "(match-all ";
            print_expr(os, *m.target);
            os << ' ';
            print_expr(os, *m.matcher);
            os << " [";
            print_pattern(os, *m.pattern);
            os << ' ';
            print_expr(os, *m.body);
            os << "])";
          },
          [&](const MatchExpr& m) {
            os << "(match ";
            print_expr(os, *m.target);
            os << ' ';
            print_expr(os, *m.matcher);
            os << " {";
            print_list(os, m.clauses, [&](const auto& c) {
              os << '[';
              print_pattern(os, *c.first);
              os << ' ';
              print_expr(os, *c.second);
              os << ']';
            });
            os << "})";
          },
          [&](const MatcherExpr& m) {
            os << "(matcher {";
            print_list(os, m.clauses, [&](const MatcherClauseAst& c) {
              os << '[';
              print_pp(os, *c.pp);
              os << ' ';
              print_expr(os, *c.next_matchers);
              os << " {";
              print_list(os, c.data_clauses, [&](const MatcherDataClause& d) {
                os << '[';
                print_dp(os, *d.dp);
                os << ' ';
                print_expr(os, *d.next_targets);
                os << ']';
              });
              os << "}]";
            });
            os << "})";
          },
          [&](const AdmExpr& a) {
            os << "(algebraic-data-matcher {";
            print_list(os, a.ctors, [&](const AdmCtor& c) {
              os << '<' << c.name;
              for (const auto& m : c.arg_matchers) {
                os << ' ';
                print_expr(os, *m);
              }
              os << '>';
            });
            os << "})";
          },
      },
      e.v);
}

void print_pattern(std::ostream& os, const Pattern& p) {
  std::visit(
      overloaded{
          [&](const WildcardPat&) { os << '_'; },
          [&](const PatVar& v) {
            os << '$' << v.name;
            print_indices(os, v.indices);
          },
          [&](const ValuePat& v) {
            os << ',';
            print_expr(os, *v.expr);
          },
          [&](const InductivePat& i) {
            os << '<' << i.ctor;
            for (const auto& a : i.args) {
              os << ' ';
              print_pattern(os, *a);
            }
            os << '>';
          },
          [&](const OrPat& o) {
            os << "(|";
            for (const auto& a : o.alts) {
              os << ' ';
              print_pattern(os, *a);
            }
            os << ')';
          },
          [&](const AndPat& a) {
            os << "(&";
            for (const auto& x : a.alts) {
              os << ' ';
              print_pattern(os, *x);
            }
            os << ')';
          },
          [&](const NotPat& n) {
            os << '!';
            print_pattern(os, *n.sub);
          },
          [&](const TuplePat& t) {
            os << '[';
            print_list(os, t.elems,
                       [&](const PatternPtr& x) { print_pattern(os, *x); });
            os << ']';
          },
          [&](const LetPat& l) {
            os << "(let {";
            print_list(os, l.bindings, [&](const LetPatBinding& b) {
              os << "[$" << b.name;
              print_indices(os, b.indices);
              os << ' ';
              print_expr(os, *b.expr);
              os << ']';
            });
            os << "} ";
            print_pattern(os, *l.body);
            os << ')';
          },
          [&](const LoopPat& l) {
            os << "(loop $" << l.index_var << " [";
            print_expr(os, *l.start);
            os << ' ';
            print_expr(os, *l.ends);
            os << ' ';
            print_pattern(os, *l.end_num_pat);
            os << "] ";
            print_pattern(os, *l.repeat_pat);
            os << ' ';
            print_pattern(os, *l.end_pat);
            os << ')';
          },
          [&](const EllipsisPat&) { os << "..."; },
      },
      p.v);
}

void print_pp(std::ostream& os, const PpNode& pp) {
  std::visit(overloaded{
                 [&](const PpHole&) { os << '$'; },
                 [&](const PpValueHole& v) { os << ",$" << v.name; },
                 [&](const PpInductive& i) {
                   os << '<' << i.ctor;
                   for (const auto& a : i.args) {
                     os << ' ';
                     print_pp(os, *a);
                   }
                   os << '>';
                 },
             },
             pp.v);
}

void print_dp(std::ostream& os, const DpNode& dp) {
  std::visit(overloaded{
                 [&](const DpVar& v) { os << '$' << v.name; },
                 [&](const DpWildcard&) { os << '_'; },
                 [&](const DpInductive& i) {
                   os << '<' << i.ctor;
                   for (const auto& a : i.args) {
                     os << ' ';
                     print_dp(os, *a);
                   }
                   os << '>';
                 },
             },
             dp.v);
}

// --- ellipsis validation -----------------------------------------------------

struct EllipsisCount {
  int count = 0;
};

// ctx collects ellipses belonging to the innermost enclosing loop's repeat
// pattern; forbidden names the construct that bans ellipses entirely.
void walk(const Pattern& p, EllipsisCount* ctx, const char* forbidden) {
  std::visit(
      overloaded{
          [&](const EllipsisPat&) {
            if (forbidden)
              throw ParseError(
                  std::string("ellipsis is not allowed inside ") + forbidden,
                  p.pos);
            if (!ctx)
              throw ParseError(
                  "ellipsis outside a loop pattern's repeat pattern", p.pos);
            ++ctx->count;
          },
          [&](const LoopPat& l) {
            walk(*l.end_num_pat, nullptr, "an end-number pattern");
            EllipsisCount inner;
            walk(*l.repeat_pat, &inner, nullptr);
            if (inner.count != 1)
              throw ParseError(
                  "loop pattern for index variable '$" + l.index_var +
                      "': repeat pattern must contain exactly one ellipsis "
                      "(found " +
                      std::to_string(inner.count) + ")",
                  p.pos);
            // ellipses in the end pattern belong to the enclosing loop
            walk(*l.end_pat, ctx, forbidden);
          },
          [&](const NotPat& n) { walk(*n.sub, nullptr, "a not-pattern"); },
          [&](const OrPat& o) {
            for (const auto& a : o.alts) walk(*a, ctx, forbidden);
          },
          [&](const AndPat& a) {
            for (const auto& x : a.alts) walk(*x, ctx, forbidden);
          },
          [&](const InductivePat& i) {
            for (const auto& a : i.args) walk(*a, ctx, forbidden);
          },
          [&](const TuplePat& t) {
            for (const auto& e : t.elems) walk(*e, ctx, forbidden);
          },
          [&](const LetPat& l) { walk(*l.body, ctx, forbidden); },
          [&](const auto&) {},
      },
      p.v);
}

}  // namespace

std::string to_text(const Expr& e) {
  std::ostringstream os;
  print_expr(os, e);
  return os.str();
}

std::string to_text(const Pattern& p) {
  std::ostringstream os;
  print_pattern(os, p);
  return os.str();
}

std::string to_text(const PpNode& pp) {
  std::ostringstream os;
  print_pp(os, pp);
  return os.str();
}

std::string to_text(const DpNode& dp) {
  std::ostringstream os;
  print_dp(os, dp);
  return os.str();
}

std::string to_text(const TopForm& form) {
  if (form.is_define())
    return "(define $" + form.define_name + " " + to_text(*form.expr) + ")";
  return to_text(*form.expr);
}

void validate_pattern(const Pattern& p) { walk(p, nullptr, nullptr); }

}  // namespace loopmatch
