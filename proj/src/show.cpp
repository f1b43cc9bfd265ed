#include "loopmatch/show.hpp"

#include <sstream>

namespace loopmatch {

namespace {

void print_value(std::ostream& os, Interp& interp, const ValuePtr& v,
                 const std::optional<std::int64_t>& limit) {
  std::visit(
      overloaded{
          [&](std::int64_t n) { os << n; },
          [&](bool b) { os << (b ? "#t" : "#f"); },
          [&](const std::string& s) {
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
          },
          [&](const NilVal&) { os << "{}"; },
          [&](const ConsVal&) {
            os << '{';
            ValuePtr cur = v;
            std::int64_t count = 0;
            while (const auto* c = std::get_if<ConsVal>(&cur->v)) {
              if (limit && count >= *limit) {
                os << (count ? " ..." : "...");
                break;
              }
              if (count) os << ' ';
              print_value(os, interp, c->head->force(interp), limit);
              ++count;
              cur = c->tail->force(interp);
            }
            os << '}';
          },
          [&](const TupleVal& t) {
            os << '[';
            bool first = true;
            for (const auto& e : t.elems) {
              if (!first) os << ' ';
              first = false;
              print_value(os, interp, e->force(interp), limit);
            }
            os << ']';
          },
          [&](const InductiveVal& d) {
            os << '<' << d.ctor;
            for (const auto& a : d.args) {
              os << ' ';
              print_value(os, interp, a->force(interp), limit);
            }
            os << '>';
          },
          [&](const HashVal& h) {
            os << "{|";
            bool first = true;
            for (const auto& [k, val] : h.entries) {
              if (!first) os << ' ';
              first = false;
              os << '[' << k << ' ';
              print_value(os, interp, val->force(interp), limit);
              os << ']';
            }
            os << "|}";
          },
          [&](const ClosureVal&) { os << "#<closure>"; },
          [&](const BuiltinVal&) { os << "#<builtin>"; },
          [&](const SomethingVal&) { os << "#<matcher>"; },
          [&](const MatcherVal&) { os << "#<matcher>"; },
      },
      v->v);
}

}  // namespace

std::string show(Interp& interp, const ValuePtr& v,
                 std::optional<std::int64_t> take_limit) {
  std::ostringstream os;
  print_value(os, interp, v, take_limit);
  return os.str();
}

}  // namespace loopmatch
