#ifndef UADB_UAA_HPP
#define UADB_UAA_HPP

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "uadb/eval.hpp"
#include "uadb/query.hpp"
#include "uadb/relation.hpp"

namespace uadb {

// A value of the annotated universe U+: a domain constant tagged certain
// (T) or uncertain (F). Rendered "v^T" / "v^F".
struct AnnotatedValue {
  Value value;
  bool certain = true;
};

bool annotated_identical(const AnnotatedValue& a, const AnnotatedValue& b);
std::string to_display(const AnnotatedValue& v);

// Tuples over U+. Grouping and map identity include the labels; within one
// stripped value, certain sorts before uncertain.
using AnnotatedTuple = std::vector<AnnotatedValue>;

Tuple strip(const AnnotatedTuple& t);
std::string to_display(const AnnotatedTuple& t);

struct AnnotatedTupleLess {
  bool operator()(const AnnotatedTuple& a, const AnnotatedTuple& b) const;
};

// Attribute-annotated relation with row-level [d, c] pairs over N.
struct AnnotatedRelation {
  Schema schema;
  std::map<AnnotatedTuple, Element, AnnotatedTupleLess> rows;

  void set(AnnotatedTuple t, Element pair);
  void add(AnnotatedTuple t, Element pair);
  void validate() const;
};

using AnnotatedDatabase = std::map<std::string, AnnotatedRelation>;

// --- expressions over U+ ---------------------------------------------------

enum class ArithOp { add, sub, mul };

struct UExpr;
using UExprPtr = std::shared_ptr<const UExpr>;

struct UAttr {
  std::string name;
};
struct UConst {
  AnnotatedValue value;
};
struct UArith {
  ArithOp op;
  UExprPtr left, right;
};
struct UCmp {
  CmpOp op;
  UExprPtr left, right;
};
struct UNot {
  UExprPtr inner;
};
struct UAnd {
  UExprPtr left, right;
};
struct UOr {
  UExprPtr left, right;
};
struct UIf {
  UExprPtr cond, then_branch, else_branch;
};
struct UConcat {
  UExprPtr left, right;
};

struct UExpr {
  std::variant<UAttr, UConst, UArith, UCmp, UNot, UAnd, UOr, UIf, UConcat>
      node;
};

namespace ue {
UExprPtr attr(std::string name);
UExprPtr constant(Value v, bool certain = true);
UExprPtr arith(ArithOp op, UExprPtr l, UExprPtr r);
UExprPtr cmp(CmpOp op, UExprPtr l, UExprPtr r);
UExprPtr negation(UExprPtr e);
UExprPtr conj(UExprPtr l, UExprPtr r);
UExprPtr disj(UExprPtr l, UExprPtr r);
UExprPtr cond(UExprPtr c, UExprPtr t, UExprPtr f);
UExprPtr concat(UExprPtr l, UExprPtr r);
}  // namespace ue

// Evaluates e over an annotated tuple. The value is the plain evaluation
// of the stripped expression; the label follows the per-operator rules
// (conjunction and disjunction depend on operand values, multiplication by
// a certain zero absorbs to 0^T).
AnnotatedValue eval_expr(const UExpr& e, const Schema& schema,
                         const AnnotatedTuple& t);

// Transfers a boolean expression result to a row annotation:
// T^T -> [1,1], T^F -> [1,0], anything else -> [0,0].
Element trans(const AnnotatedValue& res);

// Unit form of a pair: [1,1] when c > 0, [1,0] when c = 0 < d, else [0,0].
Element unit(const Element& pair);

// --- annotated queries ------------------------------------------------------

enum class AggFn { count, sum, min, max };

struct UAQuery;
using UAQueryPtr = std::shared_ptr<const UAQuery>;

struct URelRef {
  std::string name;
};
struct USelect {
  Predicate pred;
  UAQueryPtr input;
};
struct UProjectItem {
  UExprPtr expr;
  std::string name;
};
struct UProject {
  std::vector<UProjectItem> items;
  UAQueryPtr input;
};
struct UJoin {
  Predicate pred;
  UAQueryPtr left, right;
};
struct UCross {
  UAQueryPtr left, right;
};
struct UUnion {
  UAQueryPtr left, right;
};
struct UAggregate {
  std::vector<std::string> group_attrs;
  AggFn fn;
  std::string agg_attr;  // ignored for count
  UAQueryPtr input;
};
struct UDifference {
  UAQueryPtr left, right;
};

struct UAQuery {
  std::variant<URelRef, USelect, UProject, UJoin, UCross, UUnion, UAggregate,
               UDifference>
      node;
};

namespace uq {
UAQueryPtr rel(std::string name);
UAQueryPtr select(Predicate p, UAQueryPtr in);
UAQueryPtr project(std::vector<UProjectItem> items, UAQueryPtr in);
UAQueryPtr project_attrs(std::vector<std::string> attrs, UAQueryPtr in);
UAQueryPtr join(Predicate p, UAQueryPtr l, UAQueryPtr r);
UAQueryPtr cross(UAQueryPtr l, UAQueryPtr r);
UAQueryPtr union_all(UAQueryPtr l, UAQueryPtr r);
UAQueryPtr aggregate(std::vector<std::string> group_attrs, AggFn fn,
                     std::string agg_attr, UAQueryPtr in);
UAQueryPtr difference(UAQueryPtr l, UAQueryPtr r);
}  // namespace uq

// Evaluates an annotated query. Positive operators pass attribute labels
// through and combine row pairs with the pair semiring; selection and join
// additionally multiply by trans of the condition. Aggregation groups on
// stripped values and difference forces its whole output uncertain.
AnnotatedRelation eval_uaa(const AnnotatedDatabase& db, const UAQuery& q);

// Converts a plain RA+ query (no expressions) to its annotated form.
UAQueryPtr lift_query(const Query& q);

}  // namespace uadb

#endif
