#ifndef UADB_UA_DATABASE_HPP
#define UADB_UA_DATABASE_HPP

#include <map>
#include <string>

#include "uadb/eval.hpp"
#include "uadb/models.hpp"
#include "uadb/relation.hpp"

namespace uadb {

// Annotation pair [d, c]: d is the tuple's best-guess-world annotation, c a
// c-sound under-approximation of its certain annotation. Construction
// enforces the sandwich c <= d; violations are errors, never clamps.
Element make_ua_pair(const Semiring& base, Element d, Element c);

// Rendering: canonical "[d,c]", and the (u,c) display form with u = d - c
// used by bag examples and the CLI table output.
std::string render_ua(const Semiring& base, const Element& pair);
std::string render_ua_uc(const Semiring& base, const Element& pair);

struct UADB {
  Semiring base = Semiring::natural();
  Database relations;  // over Semiring::pair_of(base)

  Semiring pair_semiring() const { return Semiring::pair_of(base); }
  void validate() const;
};

// Pairs a best-guess world D with a labeling L: every tuple carries
// [D(t), L(t)]. Schemas must match and L(t) <= D(t) must hold.
UADB make_uadb(const Database& world, const Database& labeling);

// Component projections; both are semiring homomorphisms.
Database h_det(const UADB& db);
Database h_cert(const UADB& db);
KRelation h_det(const KRelation& rel);
KRelation h_cert(const KRelation& rel);

// RA+ in the pair semiring. h_det of the result equals the query over the
// best-guess world; h_cert stays c-sound for the query result.
KRelation eval_ua(const UADB& db, const Query& q);

// attrs is an x-key iff every x-tuple is optional, has one alternative, or
// has two alternatives differing on attrs.
bool is_xkey(const XDB& r, const std::vector<std::string>& attrs);

enum class CCompleteness { preserved, not_preserved, inapplicable };

struct CCompletenessCheck {
  CCompleteness status = CCompleteness::inapplicable;
  std::string reason;
};

// Sufficient condition for labeled answers to equal the certain answers:
// a self-join-free conjunctive query in canonical form whose projection
// retains an x-key of every accessed relation. Inputs where every x-tuple
// is a singleton (TI shape) preserve c-completeness for any RA+ query.
// Queries outside the canonical form report inapplicable, not false.
CCompletenessCheck preserves_ccompleteness(
    const Query& q, const std::map<std::string, XDB>& dbs);

}  // namespace uadb

#endif
