#ifndef UADB_QUERY_HPP
#define UADB_QUERY_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "uadb/relation.hpp"
#include "uadb/value.hpp"

namespace uadb {

enum class CmpOp { eq, ne, lt, le, gt, ge };

std::string to_display(CmpOp op);
std::string to_sql(CmpOp op);
CmpOp flip(CmpOp op);
CmpOp negate(CmpOp op);

// Boolean predicate over a tuple: atoms compare an attribute against
// another attribute or a constant; combined with and/or/not.
class Predicate {
 public:
  struct Atom {
    std::string lhs;
    CmpOp op;
    std::variant<std::string, Value> rhs;  // attribute name or constant
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

  static Predicate always_true();
  static Predicate cmp_const(std::string attr, CmpOp op, Value v);
  static Predicate cmp_attrs(std::string lhs, CmpOp op, std::string rhs);
  static Predicate conj(Predicate a, Predicate b);
  static Predicate disj(Predicate a, Predicate b);
  static Predicate negation(Predicate p);

  bool trivially_true() const { return !root_; }
  const Ptr& root() const { return root_; }

  // Checks referenced attributes against the schema.
  void validate(const Schema& schema) const;
  bool eval(const Schema& schema, const Tuple& t) const;

  std::string to_text() const;
  std::string to_sql() const;

 private:
  explicit Predicate(Ptr root) : root_(std::move(root)) {}
  Ptr root_;  // null means "true"
};

struct Query;
using QueryPtr = std::shared_ptr<const Query>;

struct RelRef {
  std::string name;
};
struct Select {
  Predicate pred;
  QueryPtr input;
};
struct Project {
  std::vector<std::string> attrs;
  QueryPtr input;
};
struct Join {
  Predicate pred;
  QueryPtr left, right;
};
struct CrossProduct {
  QueryPtr left, right;
};
struct UnionAll {
  QueryPtr left, right;
};
// Generalized projection restricted to the one expression the bag rewriting
// needs: drop attributes a and b, append min(a, b) as out.
struct MergeMin {
  std::string a, b, out;
  QueryPtr input;
};

struct Query {
  std::variant<RelRef, Select, Project, Join, CrossProduct, UnionAll, MergeMin>
      node;
};

namespace q {
QueryPtr rel(std::string name);
QueryPtr select(Predicate p, QueryPtr in);
QueryPtr project(std::vector<std::string> attrs, QueryPtr in);
QueryPtr join(Predicate p, QueryPtr l, QueryPtr r);
QueryPtr cross(QueryPtr l, QueryPtr r);
QueryPtr union_all(QueryPtr l, QueryPtr r);
QueryPtr merge_min(std::string a, std::string b, std::string out, QueryPtr in);
}  // namespace q

std::string to_display(const Query& query);

}  // namespace uadb

#endif
