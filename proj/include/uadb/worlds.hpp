#ifndef UADB_WORLDS_HPP
#define UADB_WORLDS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "uadb/eval.hpp"
#include "uadb/relation.hpp"

namespace uadb {

inline constexpr std::uint64_t kDefaultWorldBudget = 1'000'000;

// Reads UADB_WORLD_BUDGET when set, otherwise the default.
std::uint64_t world_budget_from_env();

// An incomplete K-database encoded as a single database over the
// possible-world semiring K^W: every annotation is a vector of width
// world_count holding the tuple's annotation in each world. World ids are
// dense and 1-based.
struct WorldDB {
  std::size_t world_count = 0;
  Semiring base = Semiring::boolean();
  Database relations;  // over Semiring::vector_of(base, world_count)
  std::optional<std::vector<double>> world_probabilities;

  Semiring vector_semiring() const {
    return Semiring::vector_of(base, world_count);
  }
  std::size_t total_tuples() const;
  void validate() const;
};

// Extracts possible world i (1-based); zero-annotated tuples are dropped.
Database world(const WorldDB& db, std::size_t i);

// cert: greatest lower bound of the tuple's annotations across all worlds.
// An absent tuple carries the all-zero vector, hence cert = 0.
Element certain_annotation(const WorldDB& db, const std::string& rel,
                           const Tuple& t);

// poss: least upper bound across all worlds.
Element possible_annotation(const WorldDB& db, const std::string& rel,
                            const Tuple& t);

// Evaluates q once in the vector semiring; world extraction commutes with
// the query for every world id.
WorldDB eval_worlds(const WorldDB& db, const Query& q);

// Ground truth: cert of every tuple of Q(D), as a base-semiring relation
// (tuples whose certain annotation is zero are absent). Guarded by
// |W| * total input tuples <= budget.
KRelation oracle_certain(const WorldDB& db, const Query& q,
                         std::uint64_t budget = kDefaultWorldBudget);

// poss of every tuple of Q(D): the possible-tuple report.
KRelation oracle_possible(const WorldDB& db, const Query& q,
                          std::uint64_t budget = kDefaultWorldBudget);

// Re-encodes a set-semantics (B) world database as a bag (N) database with
// multiplicity 1 for every present tuple.
WorldDB to_bag(const WorldDB& db);
KRelation to_bag(const KRelation& r);
Database to_bag(const Database& db);

}  // namespace uadb

#endif
