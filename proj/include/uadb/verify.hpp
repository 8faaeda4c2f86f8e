#ifndef UADB_VERIFY_HPP
#define UADB_VERIFY_HPP

#include <variant>

#include "uadb/models.hpp"
#include "uadb/rewriter.hpp"
#include "uadb/ua_database.hpp"

namespace uadb {

using Model = std::variant<TIDB, XDB, CTable>;

struct MetricsReport {
  std::size_t oracle_certain_count = 0;
  std::size_t labeled_certain_count = 0;
  std::size_t false_negatives = 0;
  std::size_t false_positives = 0;
  double false_negative_rate = 0;
  double false_positive_rate = 0;
  double runtime_ms = 0;
};

struct VerifyResult {
  MetricsReport metrics;
  KRelation labeled;  // eval_ua output (pairs over N)
  KRelation oracle;   // certain annotations of the query result
};

// Builds the UA-database of a model (best-guess world paired with its
// labeling, both as multiplicity-1 bags), evaluates q over it and over the
// enumerated worlds, and compares. c-soundness is asserted: any labeled
// annotation above the oracle's certain annotation is an invariant
// violation, so the false positive rate is provably zero.
VerifyResult verify_query(const Model& model, const Query& q,
                          std::uint64_t budget = kDefaultWorldBudget,
                          std::uint64_t seed = 0);

// The UA encoding of a model: world = best guess, labeling = scheme output,
// both re-encoded over N.
UADB model_to_uadb(const Model& model, std::uint64_t seed = 0,
                   bool ti_include_optionals = false);

WorldDB expand_model(const Model& model,
                     std::uint64_t budget = kDefaultWorldBudget);

std::string render_metrics(const MetricsReport& m);

}  // namespace uadb

#endif
