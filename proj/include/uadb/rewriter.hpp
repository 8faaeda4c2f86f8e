#ifndef UADB_REWRITER_HPP
#define UADB_REWRITER_HPP

#include <string>

#include "uadb/ua_database.hpp"

namespace uadb {

// Name of the certainty flag column appended by the bag encoding.
inline const std::string kCertaintyColumn = "C";

// Enc: a UA N-relation becomes a plain bag relation whose schema gains a
// trailing C in {0,1}; (t,1) carries multiplicity c and (t,0) carries
// d - c. Zero-count rows are absent.
KRelation enc(const KRelation& ua_rel);
Database enc(const UADB& db);

// Enc^-1: collapses the flagged copies back into pairs
// [count(t,0) + count(t,1), count(t,1)]. Rejects C values outside {0,1}.
KRelation dec(const KRelation& enc_rel);

// Rewrites an RA+ query over UA-relations into a plain bag query over the
// encoded relations: selection and union pass through, projection appends
// C, and a join folds the two C flags with min via the one generalized
// projection the engine supports.
Query rewrite_ra(const Query& q);

// ANSI SQL text per the published templates (selection via WHERE,
// projection keeps C, joins emit Q1.C*Q2.C AS C, union via UNION ALL).
// Input relations are assumed to be stored in encoded form.
std::string emit_sql(const Query& q);

enum class ModelKind { ti, xdb, ctable };

struct LabelingColumns {
  std::string table = "R";
  std::vector<std::string> attrs;
  std::string probability = "P";
  std::string xid = "Xid";
  std::string altid = "Altid";
  std::vector<std::string> vars;
  std::string local_condition = "LC";
};

// SQL that converts a stored TI / x-DB / C-table relation into the labeled
// encoding (best-guess rows with a C flag).
std::string emit_labeling_sql(ModelKind kind, const LabelingColumns& cols);

}  // namespace uadb

#endif
