#ifndef UADB_MODELS_HPP
#define UADB_MODELS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uadb/condition.hpp"
#include "uadb/relation.hpp"
#include "uadb/worlds.hpp"

namespace uadb {

// --- Tuple-independent databases ---------------------------------------

struct TIRow {
  Tuple tuple;
  bool optional = false;
  std::optional<double> probability;
};

struct TIDB {
  Schema schema;
  std::vector<TIRow> rows;

  bool has_probabilities() const;
  void validate() const;
};

// --- x-DBs (block-independent disjoint alternatives) --------------------

struct XTuple {
  std::vector<Tuple> alternatives;
  bool optional = false;
  std::optional<std::vector<double>> probabilities;

  // Total probability mass of the x-tuple; 1 when not probabilistic and
  // not optional.
  double mass() const;
};

struct XDB {
  Schema schema;
  std::vector<XTuple> xtuples;

  bool has_probabilities() const;
  void validate() const;
};

// --- C-tables ------------------------------------------------------------

struct CTRow {
  std::vector<CtTerm> values;
  Condition local = Condition::always_true();
};

struct CTVariable {
  std::string name;
  std::vector<Value> candidates;  // required finite domain
  std::optional<std::vector<double>> probabilities;
};

struct CTable {
  Schema schema;
  std::vector<CTRow> rows;
  Condition global = Condition::always_true();
  std::vector<CTVariable> variables;

  const CTVariable* find_variable(const std::string& name) const;
  void validate() const;
};

// --- Labeling schemes ----------------------------------------------------
// A labeling is a B-relation under-approximating certain tuples; tuples
// labeled F are simply absent.

// T iff the tuple is not optional (marginal probability 1). C-correct.
KRelation label_ti(const TIDB& db);

// The highest-probability world { t | P(t) >= 0.5 }. Without probabilities
// the default keeps just the non-optional tuples; include_optionals adds
// the rest.
KRelation bgw_ti(const TIDB& db, bool include_optionals = false);

// T iff the tuple is the single alternative of a non-optional x-tuple.
// C-correct.
KRelation label_xdb(const XDB& db);

// Per x-tuple: the argmax-probability alternative (ties break toward the
// lowest index), or nothing when omitting beats every alternative. Without
// probabilities seed 0 picks the first alternative of every non-optional
// x-tuple and omits optional ones; other seeds pick uniformly.
KRelation bgw_xdb(const XDB& db, std::uint64_t seed = 0);

// T only for all-constant rows whose local condition is in CNF and passes
// the syntactic tautology check. C-sound, not c-complete.
KRelation label_ctable(const CTable& db);

// Materializes the world of one valuation: per-variable argmax when
// probabilities are present, otherwise a seed-deterministic pick (seed 0 is
// the first candidate). Valuations violating the global condition fall
// back to a scan over all assignments.
KRelation bgw_ctable(const CTable& db, std::uint64_t seed = 0);

// --- Possible-world expansion (the oracle's input) -----------------------
// Explicit enumeration, guarded by world count <= budget. Set semantics:
// the result is B-based; use to_bag for the multiplicity-1 N encoding.

WorldDB expand_model_to_worlds(const TIDB& db,
                               std::uint64_t budget = kDefaultWorldBudget);
WorldDB expand_model_to_worlds(const XDB& db,
                               std::uint64_t budget = kDefaultWorldBudget);
WorldDB expand_model_to_worlds(const CTable& db,
                               std::uint64_t budget = kDefaultWorldBudget);

}  // namespace uadb

#endif
