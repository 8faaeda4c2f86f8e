#include "uadb/eval.hpp"

#include <algorithm>
#include <set>

#include "uadb/errors.hpp"

namespace uadb {

namespace {

std::string qualifier(const Schema& s, const Schema& other, bool left) {
  const std::string fallback = left ? "q1" : "q2";
  if (s.name.empty() || s.name == other.name) return fallback;
  return s.name;
}

const KRelation& resolve(const Database& db, const std::string& name) {
  auto it = db.find(name);
  if (it == db.end()) throw InvalidArgument("unknown relation '" + name + "'");
  return it->second;
}

}  // namespace

Schema concat_schemas(const Schema& left, const Schema& right) {
  std::set<std::string> l(left.attributes.begin(), left.attributes.end());
  std::set<std::string> r(right.attributes.begin(), right.attributes.end());
  const std::string lq = qualifier(left, right, true);
  const std::string rq = qualifier(right, left, false);
  Schema out;
  out.name = "";
  for (const auto& a : left.attributes)
    out.attributes.push_back(r.count(a) ? lq + "." + a : a);
  for (const auto& a : right.attributes)
    out.attributes.push_back(l.count(a) ? rq + "." + a : a);
  std::set<std::string> seen;
  for (const auto& a : out.attributes)
    if (!seen.insert(a).second)
      throw InvalidArgument("attribute '" + a +
                            "' is ambiguous after concatenation");
  return out;
}

namespace {

Schema schema_of(const std::map<std::string, Schema>& schemas,
                 const Query& q) {
  if (const auto* r = std::get_if<RelRef>(&q.node)) {
    auto it = schemas.find(r->name);
    if (it == schemas.end())
      throw InvalidArgument("unknown relation '" + r->name + "'");
    return it->second;
  }
  if (const auto* s = std::get_if<Select>(&q.node)) {
    Schema in = schema_of(schemas, *s->input);
    s->pred.validate(in);
    return in;
  }
  if (const auto* p = std::get_if<Project>(&q.node)) {
    Schema in = schema_of(schemas, *p->input);
    Schema out;
    out.name = in.name;
    for (const auto& a : p->attrs) {
      if (!in.index_of(a))
        throw InvalidArgument("projection references missing attribute '" + a +
                              "'");
      out.attributes.push_back(a);
    }
    if (out.attributes.empty())
      throw InvalidArgument("projection must keep at least one attribute");
    return out;
  }
  if (const auto* j = std::get_if<Join>(&q.node)) {
    Schema out =
        concat_schemas(schema_of(schemas, *j->left),
                       schema_of(schemas, *j->right));
    j->pred.validate(out);
    return out;
  }
  if (const auto* c = std::get_if<CrossProduct>(&q.node)) {
    return concat_schemas(schema_of(schemas, *c->left),
                          schema_of(schemas, *c->right));
  }
  if (const auto* u = std::get_if<UnionAll>(&q.node)) {
    Schema l = schema_of(schemas, *u->left);
    Schema r = schema_of(schemas, *u->right);
    if (l.attributes != r.attributes)
      throw InvalidArgument("union operands have different schemas");
    l.name = "";
    return l;
  }
  const auto& m = std::get<MergeMin>(q.node);
  Schema in = schema_of(schemas, *m.input);
  if (!in.index_of(m.a) || !in.index_of(m.b))
    throw InvalidArgument("merge-min references missing attribute");
  Schema out;
  out.name = in.name;
  for (const auto& a : in.attributes)
    if (a != m.a && a != m.b) out.attributes.push_back(a);
  out.attributes.push_back(m.out);
  return out;
}

}  // namespace

Schema output_schema(const std::map<std::string, Schema>& schemas,
                     const Query& q) {
  return schema_of(schemas, q);
}

Schema output_schema(const Database& db, const Query& q) {
  std::map<std::string, Schema> schemas;
  for (const auto& [name, rel] : db) schemas.emplace(name, rel.schema());
  return schema_of(schemas, q);
}

namespace {

const Semiring& common_semiring(const Database& db) {
  if (db.empty()) throw InvalidArgument("database has no relations");
  const Semiring& s = db.begin()->second.semiring();
  for (const auto& [name, rel] : db)
    if (rel.semiring() != s)
      throw InvalidArgument("relations use different semirings");
  return s;
}

KRelation eval_node(const Database& db, const Query& q) {
  if (const auto* r = std::get_if<RelRef>(&q.node)) return resolve(db, r->name);

  if (const auto* s = std::get_if<Select>(&q.node)) {
    KRelation in = eval_node(db, *s->input);
    s->pred.validate(in.schema());
    KRelation out(in.schema(), in.semiring());
    for (const auto& [t, k] : in.rows())
      if (s->pred.eval(in.schema(), t)) out.set(t, k);
    return out;
  }

  if (const auto* p = std::get_if<Project>(&q.node)) {
    KRelation in = eval_node(db, *p->input);
    std::vector<std::size_t> idx;
    for (const auto& a : p->attrs) {
      auto i = in.schema().index_of(a);
      if (!i)
        throw InvalidArgument("projection references missing attribute '" + a +
                              "'");
      idx.push_back(*i);
    }
    Schema out_schema;
    out_schema.name = in.schema().name;
    out_schema.attributes = p->attrs;
    KRelation out(out_schema, in.semiring());
    for (const auto& [t, k] : in.rows()) {
      Tuple proj;
      proj.reserve(idx.size());
      for (auto i : idx) proj.push_back(t[i]);
      out.add(std::move(proj), k);
    }
    return out;
  }

  if (const auto* j = std::get_if<Join>(&q.node)) {
    KRelation l = eval_node(db, *j->left);
    KRelation r = eval_node(db, *j->right);
    if (l.semiring() != r.semiring())
      throw InvalidArgument("join operands use different semirings");
    Schema out_schema = concat_schemas(l.schema(), r.schema());
    j->pred.validate(out_schema);
    KRelation out(out_schema, l.semiring());
    for (const auto& [lt, lk] : l.rows()) {
      for (const auto& [rt, rk] : r.rows()) {
        Tuple t = lt;
        t.insert(t.end(), rt.begin(), rt.end());
        if (!j->pred.eval(out_schema, t)) continue;
        out.add(std::move(t), l.semiring().mul(lk, rk));
      }
    }
    return out;
  }

  if (const auto* c = std::get_if<CrossProduct>(&q.node)) {
    Query as_join{Join{Predicate::always_true(), c->left, c->right}};
    return eval_node(db, as_join);
  }

  if (const auto* u = std::get_if<UnionAll>(&q.node)) {
    KRelation l = eval_node(db, *u->left);
    KRelation r = eval_node(db, *u->right);
    if (l.schema().attributes != r.schema().attributes)
      throw InvalidArgument("union operands have different schemas");
    if (l.semiring() != r.semiring())
      throw InvalidArgument("union operands use different semirings");
    Schema out_schema = l.schema();
    out_schema.name = "";
    KRelation out(out_schema, l.semiring());
    for (const auto& [t, k] : l.rows()) out.add(t, k);
    for (const auto& [t, k] : r.rows()) out.add(t, k);
    return out;
  }

  const auto& m = std::get<MergeMin>(q.node);
  KRelation in = eval_node(db, *m.input);
  auto ia = in.schema().index_of(m.a);
  auto ib = in.schema().index_of(m.b);
  if (!ia || !ib)
    throw InvalidArgument("merge-min references missing attribute");
  std::vector<std::size_t> keep;
  Schema out_schema;
  out_schema.name = in.schema().name;
  for (std::size_t i = 0; i < in.schema().attributes.size(); ++i) {
    if (i == *ia || i == *ib) continue;
    keep.push_back(i);
    out_schema.attributes.push_back(in.schema().attributes[i]);
  }
  out_schema.attributes.push_back(m.out);
  KRelation out(out_schema, in.semiring());
  for (const auto& [t, k] : in.rows()) {
    const auto* x = std::get_if<std::int64_t>(&t[*ia]);
    const auto* y = std::get_if<std::int64_t>(&t[*ib]);
    if (!x || !y)
      throw InvalidArgument("merge-min expects integer attributes");
    Tuple proj;
    proj.reserve(keep.size() + 1);
    for (auto i : keep) proj.push_back(t[i]);
    proj.push_back(Value(std::min(*x, *y)));
    out.add(std::move(proj), k);
  }
  return out;
}

}  // namespace

KRelation eval(const Database& db, const Query& q) {
  common_semiring(db);
  return eval_node(db, q);
}

KRelation map_annotations(const KRelation& r,
                          const std::function<Element(const Element&)>& h,
                          const Semiring& target) {
  KRelation out(r.schema(), target);
  for (const auto& [t, k] : r.rows()) out.add(t, h(k));
  return out;
}

Database map_database(const Database& db,
                      const std::function<Element(const Element&)>& h,
                      const Semiring& target) {
  Database out;
  for (const auto& [name, rel] : db)
    out.emplace(name, map_annotations(rel, h, target));
  return out;
}

Element support_to_bool(const Element& k) { return Element(k.as_nat() > 0); }

Element bool_to_nat(const Element& k) {
  return Element(std::uint64_t{k.as_bool() ? 1u : 0u});
}

}  // namespace uadb
