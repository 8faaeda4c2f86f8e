#ifndef UADB_CONDITION_HPP
#define UADB_CONDITION_HPP

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "uadb/query.hpp"
#include "uadb/value.hpp"

namespace uadb {

// A term of a C-table condition: a domain constant or a variable symbol.
struct CtTerm {
  enum class Kind { constant, variable } kind = Kind::constant;
  Value value;
  std::string var;

  static CtTerm constant(Value v) {
    return CtTerm{Kind::constant, std::move(v), ""};
  }
  static CtTerm variable(std::string name) {
    return CtTerm{Kind::variable, Value{}, std::move(name)};
  }
  bool is_var() const { return kind == Kind::variable; }
};

bool term_identical(const CtTerm& a, const CtTerm& b);
std::string to_display(const CtTerm& t);

using Valuation = std::map<std::string, Value>;

// Boolean expression over comparisons of terms, combined with and/or/not.
class Condition {
 public:
  struct Atom {
    CtTerm lhs;
    CmpOp op;
    CtTerm rhs;
  };
  struct And;
  struct Or;
  struct Not;
  using Node = std::variant<Atom, And, Or, Not>;
  using Ptr = std::shared_ptr<const Node>;
  struct And {
    Ptr left, right;
  };
  struct Or {
    Ptr left, right;
  };
  struct Not {
    Ptr inner;
  };

  static Condition always_true();
  static Condition atom(CtTerm lhs, CmpOp op, CtTerm rhs);
  static Condition conj(Condition a, Condition b);
  static Condition disj(Condition a, Condition b);
  static Condition negation(Condition c);

  bool trivially_true() const { return !root_; }
  const Ptr& root() const { return root_; }

  bool eval(const Valuation& v) const;
  void collect_variables(std::vector<std::string>& out) const;
  std::string to_text() const;

 private:
  explicit Condition(Ptr root) : root_(std::move(root)) {}
  Ptr root_;  // null means "true"
};

// Grammar: atoms `X=1`, `X<>'red'` with ops =, <>, <, <=, >, >=; AND/OR/NOT;
// parentheses; constants are numbers, 'quoted strings', true/false, null;
// bare identifiers are variables.
Condition parse_condition(const std::string& text);

// Syntactic tautology test: true iff the condition is in CNF and every
// clause contains a complementary atom pair or a ground atom that holds.
// Tautologies that are not in CNF report false.
bool is_cnf_tautology(const Condition& c);

}  // namespace uadb

#endif
