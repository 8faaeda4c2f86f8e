#ifndef UADB_QPARSE_HPP
#define UADB_QPARSE_HPP

#include <string>

#include "uadb/query.hpp"
#include "uadb/uaa.hpp"

namespace uadb {

// Parses the parenthesized query grammar, e.g.
//   (project (a b) (select (= color 'red') (rel food)))
// Operators: rel, select, project, join, cross, union.
// Predicates: (= a b) (!= a b) (< a b) (<= a b) (> a b) (>= a b)
//             (and p q) (or p q) (not p); bare words are attributes,
//             'quoted' text, numbers, true/false and null are constants.
QueryPtr parse_query(const std::string& text);

// Annotated variant: additionally difference, aggregate
//   (difference q1 q2)
//   (aggregate (group attrs...) fn [attr] q)   fn in {count,sum,min,max}
// and expression projection items (as name expr) with expression operators
// +, -, *, =, <, >, and, or, not, if, concat.
UAQueryPtr parse_uaa_query(const std::string& text);

}  // namespace uadb

#endif
