#include "uadb/worlds.hpp"

#include <cmath>
#include <cstdlib>

#include "uadb/errors.hpp"

namespace uadb {

std::uint64_t world_budget_from_env() {
  if (const char* v = std::getenv("UADB_WORLD_BUDGET")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end && *end == '\0' && parsed > 0)
      return static_cast<std::uint64_t>(parsed);
  }
  return kDefaultWorldBudget;
}

std::size_t WorldDB::total_tuples() const {
  std::size_t n = 0;
  for (const auto& [name, rel] : relations) n += rel.size();
  return n;
}

void WorldDB::validate() const {
  if (world_count == 0) throw InvalidArgument("world count must be >= 1");
  const Semiring vs = vector_semiring();
  for (const auto& [name, rel] : relations) {
    if (rel.semiring() != vs)
      throw InvalidArgument("relation '" + name +
                            "' is not annotated over " + vs.name());
  }
  if (world_probabilities) {
    if (world_probabilities->size() != world_count)
      throw InvalidArgument("probability vector width mismatch");
    double sum = 0;
    for (double p : *world_probabilities) {
      if (p < 0) throw InvalidArgument("negative world probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw InvalidArgument("world probabilities must sum to 1");
  }
}

Database world(const WorldDB& db, std::size_t i) {
  if (i < 1 || i > db.world_count)
    throw InvalidArgument("world id " + std::to_string(i) +
                          " out of range 1.." +
                          std::to_string(db.world_count));
  Database out;
  for (const auto& [name, rel] : db.relations) {
    KRelation r(rel.schema(), db.base);
    for (const auto& [t, vec] : rel.rows()) r.set(t, vec.as_vector()[i - 1]);
    out.emplace(name, std::move(r));
  }
  return out;
}

Element certain_annotation(const WorldDB& db, const std::string& rel,
                           const Tuple& t) {
  auto it = db.relations.find(rel);
  if (it == db.relations.end())
    throw InvalidArgument("unknown relation '" + rel + "'");
  if (t.size() != it->second.schema().arity())
    throw InvalidArgument("tuple arity mismatch for '" + rel + "'");
  if (!it->second.contains(t)) return db.base.zero();
  return glb_fold(db.base, it->second.annotation(t).as_vector());
}

Element possible_annotation(const WorldDB& db, const std::string& rel,
                            const Tuple& t) {
  auto it = db.relations.find(rel);
  if (it == db.relations.end())
    throw InvalidArgument("unknown relation '" + rel + "'");
  if (t.size() != it->second.schema().arity())
    throw InvalidArgument("tuple arity mismatch for '" + rel + "'");
  if (!it->second.contains(t)) return db.base.zero();
  return lub_fold(db.base, it->second.annotation(t).as_vector());
}

WorldDB eval_worlds(const WorldDB& db, const Query& q) {
  db.validate();
  WorldDB out;
  out.world_count = db.world_count;
  out.base = db.base;
  out.world_probabilities = db.world_probabilities;
  KRelation result = eval(db.relations, q);
  std::string name = result.schema().name.empty() ? "result"
                                                  : result.schema().name;
  out.relations.emplace(std::move(name), std::move(result));
  return out;
}

namespace {

void check_budget(const WorldDB& db, std::uint64_t budget) {
  const std::uint64_t cost =
      static_cast<std::uint64_t>(db.world_count) *
      static_cast<std::uint64_t>(db.total_tuples());
  if (cost > budget)
    throw BudgetExceeded("oracle cost " + std::to_string(cost) +
                         " exceeds budget " + std::to_string(budget));
}

KRelation fold_worlds(const WorldDB& db, const Query& q, bool use_glb,
                      std::uint64_t budget) {
  check_budget(db, budget);
  WorldDB result = eval_worlds(db, q);
  const KRelation& vec_rel = result.relations.begin()->second;
  KRelation out(vec_rel.schema(), db.base);
  for (const auto& [t, vec] : vec_rel.rows()) {
    out.set(t, use_glb ? glb_fold(db.base, vec.as_vector())
                       : lub_fold(db.base, vec.as_vector()));
  }
  return out;
}

}  // namespace

KRelation oracle_certain(const WorldDB& db, const Query& q,
                         std::uint64_t budget) {
  return fold_worlds(db, q, true, budget);
}

KRelation oracle_possible(const WorldDB& db, const Query& q,
                          std::uint64_t budget) {
  return fold_worlds(db, q, false, budget);
}

KRelation to_bag(const KRelation& r) {
  if (r.semiring().kind() == SemiringKind::boolean) {
    return map_annotations(r, bool_to_nat, Semiring::natural());
  }
  if (r.semiring().kind() == SemiringKind::vector &&
      r.semiring().base().kind() == SemiringKind::boolean) {
    const Semiring target =
        Semiring::vector_of(Semiring::natural(), r.semiring().width());
    return map_annotations(
        r,
        [](const Element& vec) {
          Element::Vector out;
          out.reserve(vec.as_vector().size());
          for (const Element& k : vec.as_vector()) out.push_back(bool_to_nat(k));
          return Element::vector(std::move(out));
        },
        target);
  }
  throw InvalidArgument("to_bag expects a B-annotated relation");
}

Database to_bag(const Database& db) {
  Database out;
  for (const auto& [name, rel] : db) out.emplace(name, to_bag(rel));
  return out;
}

WorldDB to_bag(const WorldDB& db) {
  if (db.base.kind() != SemiringKind::boolean)
    throw InvalidArgument("to_bag expects a B-based world database");
  WorldDB out;
  out.world_count = db.world_count;
  out.base = Semiring::natural();
  out.world_probabilities = db.world_probabilities;
  out.relations = to_bag(db.relations);
  return out;
}

}  // namespace uadb
