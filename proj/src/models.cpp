#include "uadb/models.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "uadb/errors.hpp"

namespace uadb {

namespace {

constexpr double kProbEps = 1e-9;

Element truth() { return Element(true); }

}  // namespace

// --- TIDB ----------------------------------------------------------------

bool TIDB::has_probabilities() const {
  return !rows.empty() && rows.front().probability.has_value();
}

void TIDB::validate() const {
  schema.validate();
  const bool probs = has_probabilities();
  std::set<Tuple, TupleLess> seen;
  for (const auto& row : rows) {
    if (row.tuple.size() != schema.arity())
      throw InvalidArgument("TI row arity mismatch in '" + schema.name + "'");
    if (!seen.insert(row.tuple).second)
      throw InvalidArgument("duplicate tuple in TI relation '" + schema.name +
                            "'");
    if (row.probability.has_value() != probs)
      throw InvalidArgument("TI rows mix probabilistic and plain entries");
    if (row.probability) {
      const double p = *row.probability;
      if (p <= 0 || p > 1 + kProbEps)
        throw InvalidArgument("TI probability must lie in (0,1]");
      const bool certain = p >= 1 - kProbEps;
      if (certain == row.optional)
        throw InvalidArgument(
            "TI row optional flag contradicts its probability");
    }
  }
}

KRelation label_ti(const TIDB& db) {
  db.validate();
  KRelation out(db.schema, Semiring::boolean());
  for (const auto& row : db.rows)
    if (!row.optional) out.set(row.tuple, truth());
  return out;
}

KRelation bgw_ti(const TIDB& db, bool include_optionals) {
  db.validate();
  KRelation out(db.schema, Semiring::boolean());
  for (const auto& row : db.rows) {
    bool in_world;
    if (row.probability) {
      in_world = *row.probability >= 0.5;  // boundary inclusive
    } else {
      in_world = !row.optional || include_optionals;
    }
    if (in_world) out.set(row.tuple, truth());
  }
  return out;
}

// --- XDB -----------------------------------------------------------------

double XTuple::mass() const {
  if (!probabilities) return optional ? 0.0 : 1.0;
  double m = 0;
  for (double p : *probabilities) m += p;
  return m;
}

bool XDB::has_probabilities() const {
  return !xtuples.empty() && xtuples.front().probabilities.has_value();
}

void XDB::validate() const {
  schema.validate();
  const bool probs = has_probabilities();
  for (const auto& xt : xtuples) {
    if (xt.alternatives.empty())
      throw InvalidArgument("x-tuple must have at least one alternative");
    for (const auto& alt : xt.alternatives)
      if (alt.size() != schema.arity())
        throw InvalidArgument("x-tuple alternative arity mismatch");
    for (std::size_t i = 0; i < xt.alternatives.size(); ++i)
      for (std::size_t j = i + 1; j < xt.alternatives.size(); ++j)
        if (tuple_identical(xt.alternatives[i], xt.alternatives[j]))
          throw InvalidArgument("x-tuple alternatives must be distinct");
    if (xt.probabilities.has_value() != probs)
      throw InvalidArgument("x-tuples mix probabilistic and plain entries");
    if (xt.probabilities) {
      if (xt.probabilities->size() != xt.alternatives.size())
        throw InvalidArgument("x-tuple probability count mismatch");
      double sum = 0;
      for (double p : *xt.probabilities) {
        if (p <= 0 || p > 1 + kProbEps)
          throw InvalidArgument("alternative probability must lie in (0,1]");
        sum += p;
      }
      if (sum > 1 + kProbEps)
        throw InvalidArgument("x-tuple probability mass exceeds 1");
      const bool full = sum >= 1 - kProbEps;
      if (full == xt.optional)
        throw InvalidArgument(
            "x-tuple optional flag contradicts its probability mass");
    }
  }
}

KRelation label_xdb(const XDB& db) {
  db.validate();
  KRelation out(db.schema, Semiring::boolean());
  for (const auto& xt : db.xtuples)
    if (xt.alternatives.size() == 1 && !xt.optional)
      out.set(xt.alternatives.front(), truth());
  return out;
}

KRelation bgw_xdb(const XDB& db, std::uint64_t seed) {
  db.validate();
  KRelation out(db.schema, Semiring::boolean());
  std::mt19937_64 rng(seed);
  for (const auto& xt : db.xtuples) {
    if (xt.probabilities) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < xt.probabilities->size(); ++i)
        if ((*xt.probabilities)[i] > (*xt.probabilities)[best]) best = i;
      const double omit = 1.0 - xt.mass();
      if (xt.optional && (*xt.probabilities)[best] < omit) continue;
      out.set(xt.alternatives[best], truth());
      continue;
    }
    if (seed == 0) {
      if (!xt.optional) out.set(xt.alternatives.front(), truth());
      continue;
    }
    const std::size_t options =
        xt.alternatives.size() + (xt.optional ? 1 : 0);
    const std::size_t pick = rng() % options;
    if (pick < xt.alternatives.size()) out.set(xt.alternatives[pick], truth());
  }
  return out;
}

// --- CTable ---------------------------------------------------------------

const CTVariable* CTable::find_variable(const std::string& name) const {
  for (const auto& v : variables)
    if (v.name == name) return &v;
  return nullptr;
}

void CTable::validate() const {
  schema.validate();
  std::set<std::string> names;
  for (const auto& v : variables) {
    if (!names.insert(v.name).second)
      throw InvalidArgument("duplicate variable '" + v.name + "'");
    if (v.candidates.empty())
      throw InvalidArgument("variable '" + v.name +
                            "' needs a nonempty candidate domain");
    if (v.probabilities) {
      if (v.probabilities->size() != v.candidates.size())
        throw InvalidArgument("candidate probability count mismatch for '" +
                              v.name + "'");
      double sum = 0;
      for (double p : *v.probabilities) {
        if (p < 0) throw InvalidArgument("negative candidate probability");
        sum += p;
      }
      if (std::abs(sum - 1.0) > kProbEps)
        throw InvalidArgument("candidate probabilities for '" + v.name +
                              "' must sum to 1");
    }
  }
  auto check_known = [&](const std::string& var) {
    if (!names.count(var))
      throw InvalidArgument("condition references unknown variable '" + var +
                            "'");
  };
  std::vector<std::string> used;
  global.collect_variables(used);
  for (const auto& row : rows) {
    if (row.values.size() != schema.arity())
      throw InvalidArgument("C-table row arity mismatch");
    for (const auto& term : row.values)
      if (term.is_var()) check_known(term.var);
    row.local.collect_variables(used);
  }
  for (const auto& var : used) check_known(var);
}

KRelation label_ctable(const CTable& db) {
  db.validate();
  KRelation out(db.schema, Semiring::boolean());
  for (const auto& row : db.rows) {
    const bool ground = std::none_of(row.values.begin(), row.values.end(),
                                     [](const CtTerm& t) { return t.is_var(); });
    if (!ground || !is_cnf_tautology(row.local)) continue;
    Tuple t;
    t.reserve(row.values.size());
    for (const auto& term : row.values) t.push_back(term.value);
    out.set(std::move(t), truth());
  }
  return out;
}

namespace {

Tuple instantiate(const CTRow& row, const Valuation& v) {
  Tuple t;
  t.reserve(row.values.size());
  for (const auto& term : row.values) {
    if (term.is_var()) {
      t.push_back(v.at(term.var));
    } else {
      t.push_back(term.value);
    }
  }
  return t;
}

KRelation materialize(const CTable& db, const Valuation& v) {
  KRelation out(db.schema, Semiring::boolean());
  for (const auto& row : db.rows)
    if (row.local.eval(v)) out.add(instantiate(row, v), Element(true));
  return out;
}

// Walks all assignments in lexicographic candidate order; returns false
// once the visitor asks to stop.
bool for_each_valuation(const CTable& db, std::size_t i, Valuation& v,
                        const std::function<bool(const Valuation&)>& fn) {
  if (i == db.variables.size()) return fn(v);
  const auto& var = db.variables[i];
  for (const auto& cand : var.candidates) {
    v[var.name] = cand;
    if (!for_each_valuation(db, i + 1, v, fn)) return false;
  }
  v.erase(var.name);
  return true;
}

}  // namespace

KRelation bgw_ctable(const CTable& db, std::uint64_t seed) {
  db.validate();
  Valuation v;
  std::mt19937_64 rng(seed);
  for (const auto& var : db.variables) {
    std::size_t pick = 0;
    if (var.probabilities) {
      for (std::size_t i = 1; i < var.probabilities->size(); ++i)
        if ((*var.probabilities)[i] > (*var.probabilities)[pick]) pick = i;
    } else if (seed != 0) {
      pick = rng() % var.candidates.size();
    }
    v[var.name] = var.candidates[pick];
  }
  if (db.global.eval(v)) return materialize(db, v);

  // The heuristic valuation broke the global condition; scan for any
  // satisfying assignment instead.
  std::optional<Valuation> found;
  Valuation scan;
  for_each_valuation(db, 0, scan, [&](const Valuation& cand) {
    if (db.global.eval(cand)) {
      found = cand;
      return false;
    }
    return true;
  });
  if (!found)
    throw InvalidArgument(
        "global condition is unsatisfiable over the candidate domains");
  return materialize(db, *found);
}

// --- world expansion -------------------------------------------------------

namespace {

void check_world_budget(std::uint64_t worlds, std::uint64_t budget) {
  if (worlds == 0 || worlds > budget)
    throw BudgetExceeded("model expands to " + std::to_string(worlds) +
                         " worlds, budget is " + std::to_string(budget));
}

WorldDB assemble(const Schema& schema, std::vector<KRelation> worlds,
                 std::optional<std::vector<double>> probs) {
  WorldDB out;
  out.world_count = worlds.size();
  out.base = Semiring::boolean();
  out.world_probabilities = std::move(probs);
  const Semiring vs = out.vector_semiring();
  KRelation rel(schema, vs);

  std::set<Tuple, TupleLess> domain;
  for (const auto& w : worlds)
    for (const auto& [t, k] : w.rows()) domain.insert(t);
  for (const auto& t : domain) {
    Element::Vector vec;
    vec.reserve(worlds.size());
    for (const auto& w : worlds) vec.push_back(w.annotation(t));
    rel.set(t, Element::vector(std::move(vec)));
  }
  std::string name = schema.name.empty() ? "R" : schema.name;
  out.relations.emplace(name, std::move(rel));
  out.validate();
  return out;
}

}  // namespace

WorldDB expand_model_to_worlds(const TIDB& db, std::uint64_t budget) {
  db.validate();
  std::vector<std::size_t> optional_rows;
  for (std::size_t i = 0; i < db.rows.size(); ++i)
    if (db.rows[i].optional) optional_rows.push_back(i);
  if (optional_rows.size() >= 63)
    throw BudgetExceeded("too many optional tuples to enumerate");
  const std::uint64_t count = std::uint64_t{1} << optional_rows.size();
  check_world_budget(count, budget);

  std::vector<KRelation> worlds;
  std::optional<std::vector<double>> probs;
  if (db.has_probabilities()) probs.emplace();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    KRelation w(db.schema, Semiring::boolean());
    double p = 1.0;
    std::size_t opt = 0;
    for (const auto& row : db.rows) {
      bool present = true;
      if (row.optional) {
        present = (mask >> opt) & 1;
        ++opt;
      }
      if (present) w.set(row.tuple, truth());
      if (probs) {
        const double pt = *row.probability;
        p *= present ? pt : 1.0 - pt;
      }
    }
    if (probs) probs->push_back(p);
    worlds.push_back(std::move(w));
  }
  return assemble(db.schema, std::move(worlds), std::move(probs));
}

WorldDB expand_model_to_worlds(const XDB& db, std::uint64_t budget) {
  db.validate();
  std::uint64_t count = 1;
  std::vector<std::size_t> options;
  for (const auto& xt : db.xtuples) {
    const std::size_t n = xt.alternatives.size() + (xt.optional ? 1 : 0);
    options.push_back(n);
    count = checked_mul(count, n);
    check_world_budget(count, budget);
  }

  std::vector<KRelation> worlds;
  std::optional<std::vector<double>> probs;
  if (db.has_probabilities()) probs.emplace();
  std::vector<std::size_t> choice(db.xtuples.size(), 0);
  for (std::uint64_t w = 0; w < count; ++w) {
    std::uint64_t rest = w;
    for (std::size_t i = 0; i < choice.size(); ++i) {
      choice[i] = rest % options[i];
      rest /= options[i];
    }
    KRelation world_rel(db.schema, Semiring::boolean());
    double p = 1.0;
    for (std::size_t i = 0; i < db.xtuples.size(); ++i) {
      const auto& xt = db.xtuples[i];
      if (choice[i] < xt.alternatives.size()) {
        world_rel.add(xt.alternatives[choice[i]], truth());
        if (probs) p *= (*xt.probabilities)[choice[i]];
      } else if (probs) {
        p *= 1.0 - xt.mass();
      }
    }
    if (probs) probs->push_back(p);
    worlds.push_back(std::move(world_rel));
  }
  return assemble(db.schema, std::move(worlds), std::move(probs));
}

WorldDB expand_model_to_worlds(const CTable& db, std::uint64_t budget) {
  db.validate();
  std::uint64_t count = 1;
  for (const auto& var : db.variables) {
    count = checked_mul(count, var.candidates.size());
    check_world_budget(count, budget);
  }

  std::vector<KRelation> worlds;
  std::vector<double> raw_probs;
  const bool probabilistic =
      !db.variables.empty() &&
      std::all_of(db.variables.begin(), db.variables.end(),
                  [](const CTVariable& v) { return v.probabilities.has_value(); });
  Valuation v;
  for_each_valuation(db, 0, v, [&](const Valuation& cand) {
    if (!db.global.eval(cand)) return true;
    worlds.push_back(materialize(db, cand));
    if (probabilistic) {
      double p = 1.0;
      for (const auto& var : db.variables) {
        const Value& chosen = cand.at(var.name);
        for (std::size_t i = 0; i < var.candidates.size(); ++i)
          if (value_identical(var.candidates[i], chosen))
            p *= (*var.probabilities)[i];
      }
      raw_probs.push_back(p);
    }
    return true;
  });
  if (worlds.empty())
    throw InvalidArgument(
        "global condition is unsatisfiable over the candidate domains");

  std::optional<std::vector<double>> probs;
  if (probabilistic) {
    // Conditioning on the global condition keeps the distribution a
    // distribution when assignments were filtered out.
    double sum = 0;
    for (double p : raw_probs) sum += p;
    for (double& p : raw_probs) p /= sum;
    probs = std::move(raw_probs);
  }
  return assemble(db.schema, std::move(worlds), std::move(probs));
}

}  // namespace uadb
