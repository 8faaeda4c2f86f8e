#ifndef UADB_EVAL_HPP
#define UADB_EVAL_HPP

#include <functional>
#include <map>
#include <string>

#include "uadb/query.hpp"
#include "uadb/relation.hpp"

namespace uadb {

// Output schema of the concatenation used by join and cross product.
// Attributes colliding between the two sides are qualified as "rel.attr";
// a side with no usable name falls back to q1/q2.
Schema concat_schemas(const Schema& left, const Schema& right);

// Output schema of q over the given relation schemas (also validates the
// query: resolvable references, matching union schemas, known attributes).
Schema output_schema(const std::map<std::string, Schema>& schemas,
                     const Query& q);
Schema output_schema(const Database& db, const Query& q);

// Positive relational algebra over K-relations. All relations must share
// one semiring; results never carry a zero annotation.
KRelation eval(const Database& db, const Query& q);

// Lifts an annotation map h pointwise; zero results are dropped. Queries
// commute with h whenever h is a semiring homomorphism.
KRelation map_annotations(const KRelation& r,
                          const std::function<Element(const Element&)>& h,
                          const Semiring& target);
Database map_database(const Database& db,
                      const std::function<Element(const Element&)>& h,
                      const Semiring& target);

// The support homomorphism N -> B (k > 0 maps to T).
Element support_to_bool(const Element& k);
// Presence embedding B -> N (T maps to 1). Not a homomorphism; used to
// re-encode set-model worlds as multiplicity-1 bags.
Element bool_to_nat(const Element& k);

}  // namespace uadb

#endif
