#include "uadb/ua_database.hpp"

#include <algorithm>
#include <set>

#include "uadb/errors.hpp"

namespace uadb {

Element make_ua_pair(const Semiring& base, Element d, Element c) {
  if (!base.contains(d) || !base.contains(c))
    throw InvalidArgument("pair components must come from " + base.name());
  if (!base.leq(c, d))
    throw InvariantViolation("certain bound " + base.render(c) +
                             " exceeds best-guess annotation " +
                             base.render(d));
  return Element::pair(std::move(d), std::move(c));
}

std::string render_ua(const Semiring& base, const Element& pair) {
  return Semiring::pair_of(base).render(pair);
}

std::string render_ua_uc(const Semiring& base, const Element& pair) {
  if (base.kind() != SemiringKind::natural)
    return render_ua(base, pair);
  const std::uint64_t d = pair.pair_d().as_nat();
  const std::uint64_t c = pair.pair_c().as_nat();
  return "(" + std::to_string(checked_sub(d, c)) + "," + std::to_string(c) +
         ")";
}

void UADB::validate() const {
  const Semiring ps = pair_semiring();
  for (const auto& [name, rel] : relations) {
    if (rel.semiring() != ps)
      throw InvalidArgument("relation '" + name + "' is not annotated over " +
                            ps.name());
    for (const auto& [t, k] : rel.rows())
      if (!base.leq(k.pair_c(), k.pair_d()))
        throw InvariantViolation("tuple " + to_display(t) +
                                 " violates c <= d in '" + name + "'");
  }
}

UADB make_uadb(const Database& world, const Database& labeling) {
  if (world.empty()) throw InvalidArgument("world database is empty");
  UADB out;
  out.base = world.begin()->second.semiring();
  const Semiring ps = out.pair_semiring();

  for (const auto& [name, d_rel] : world) {
    auto it = labeling.find(name);
    if (it == labeling.end())
      throw InvalidArgument("labeling is missing relation '" + name + "'");
    const KRelation& l_rel = it->second;
    if (l_rel.schema() != d_rel.schema())
      throw InvalidArgument("labeling schema mismatch for '" + name + "'");
    if (l_rel.semiring() != out.base || d_rel.semiring() != out.base)
      throw InvalidArgument("world and labeling must share one semiring");

    KRelation rel(d_rel.schema(), ps);
    for (const auto& [t, d] : d_rel.rows())
      rel.set(t, make_ua_pair(out.base, d, l_rel.annotation(t)));
    // A tuple labeled nonzero but absent from the world breaks the
    // sandwich against d = 0.
    for (const auto& [t, c] : l_rel.rows())
      if (!d_rel.contains(t))
        throw InvariantViolation("tuple " + to_display(t) +
                                 " is labeled certain but missing from the "
                                 "best-guess world");
    out.relations.emplace(name, std::move(rel));
  }
  for (const auto& [name, l_rel] : labeling)
    if (!world.count(name))
      throw InvalidArgument("world is missing relation '" + name + "'");
  return out;
}

namespace {

KRelation project_component(const KRelation& rel, bool det) {
  const Semiring base = rel.semiring().base();
  return map_annotations(
      rel,
      [det](const Element& k) { return det ? k.pair_d() : k.pair_c(); },
      base);
}

}  // namespace

KRelation h_det(const KRelation& rel) { return project_component(rel, true); }
KRelation h_cert(const KRelation& rel) { return project_component(rel, false); }

Database h_det(const UADB& db) {
  Database out;
  for (const auto& [name, rel] : db.relations) out.emplace(name, h_det(rel));
  return out;
}

Database h_cert(const UADB& db) {
  Database out;
  for (const auto& [name, rel] : db.relations) out.emplace(name, h_cert(rel));
  return out;
}

KRelation eval_ua(const UADB& db, const Query& q) {
  db.validate();
  return eval(db.relations, q);
}

bool is_xkey(const XDB& r, const std::vector<std::string>& attrs) {
  std::vector<std::size_t> idx;
  for (const auto& a : attrs) {
    auto i = r.schema.index_of(a);
    if (!i) throw InvalidArgument("unknown attribute '" + a + "'");
    idx.push_back(*i);
  }
  auto projections_differ = [&](const Tuple& a, const Tuple& b) {
    return std::any_of(idx.begin(), idx.end(), [&](std::size_t i) {
      return !value_identical(a[i], b[i]);
    });
  };
  for (const auto& xt : r.xtuples) {
    if (xt.optional || xt.alternatives.size() == 1) continue;
    bool differs = false;
    for (std::size_t i = 0; i < xt.alternatives.size() && !differs; ++i)
      for (std::size_t j = i + 1; j < xt.alternatives.size() && !differs; ++j)
        if (projections_differ(xt.alternatives[i], xt.alternatives[j]))
          differs = true;
    if (!differs) return false;
  }
  return true;
}

namespace {

// Collects the cross-product leaves of a canonical-form body; fails on
// anything that is not a RelRef or a cross product.
bool collect_cross_leaves(const Query& q, std::vector<std::string>& out) {
  if (const auto* r = std::get_if<RelRef>(&q.node)) {
    out.push_back(r->name);
    return true;
  }
  if (const auto* c = std::get_if<CrossProduct>(&q.node))
    return collect_cross_leaves(*c->left, out) &&
           collect_cross_leaves(*c->right, out);
  return false;
}

CCompletenessCheck inapplicable(std::string reason) {
  return {CCompleteness::inapplicable, std::move(reason)};
}

}  // namespace

CCompletenessCheck preserves_ccompleteness(
    const Query& q, const std::map<std::string, XDB>& dbs) {
  // TI-shaped inputs (every x-tuple a singleton) preserve c-completeness
  // for any RA+ query.
  const bool all_ti = std::all_of(
      dbs.begin(), dbs.end(), [](const auto& entry) {
        return std::all_of(entry.second.xtuples.begin(),
                           entry.second.xtuples.end(), [](const XTuple& xt) {
                             return xt.alternatives.size() == 1;
                           });
      });
  if (all_ti)
    return {CCompleteness::preserved,
            "all inputs are tuple-independent; any positive query applies"};

  const auto* proj = std::get_if<Project>(&q.node);
  if (!proj) return inapplicable("query is not in canonical form pi(sigma(x))");
  const Query* body = proj->input.get();
  if (const auto* sel = std::get_if<Select>(&body->node))
    body = sel->input.get();

  std::vector<std::string> accessed;
  if (!collect_cross_leaves(*body, accessed))
    return inapplicable("query body is not a cross product of base relations");
  std::set<std::string> distinct(accessed.begin(), accessed.end());
  if (distinct.size() != accessed.size())
    return inapplicable("query has a self-join");

  // Split the retained projection attributes by source relation. Qualified
  // names ("R.a") produced by the cross product map back to their relation.
  for (const auto& name : accessed) {
    auto it = dbs.find(name);
    if (it == dbs.end())
      throw InvalidArgument("unknown relation '" + name + "'");
    const XDB& xdb = it->second;
    std::vector<std::string> retained;
    for (const auto& attr : proj->attrs) {
      std::string bare = attr;
      if (auto dot = attr.find('.'); dot != std::string::npos) {
        if (attr.substr(0, dot) != name) continue;
        bare = attr.substr(dot + 1);
      } else {
        // Unqualified: count it for this relation only if the name is
        // actually one of its attributes.
        bool here = xdb.schema.index_of(bare).has_value();
        bool elsewhere = false;
        for (const auto& other : accessed) {
          if (other == name) continue;
          if (dbs.at(other).schema.index_of(bare)) elsewhere = true;
        }
        if (!here || elsewhere) continue;
      }
      if (xdb.schema.index_of(bare)) retained.push_back(bare);
    }
    if (!is_xkey(xdb, retained))
      return {CCompleteness::not_preserved,
              "projection keeps no x-key of relation '" + name + "'"};
  }
  return {CCompleteness::preserved, "projection retains an x-key per relation"};
}

}  // namespace uadb
