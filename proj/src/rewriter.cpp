#include "uadb/rewriter.hpp"

#include <set>

#include "uadb/errors.hpp"

namespace uadb {

namespace {

const Semiring kNat = Semiring::natural();

Schema enc_schema(const Schema& base) {
  if (base.index_of(kCertaintyColumn))
    throw InvalidArgument("relation '" + base.name +
                          "' already has a C attribute");
  Schema out = base;
  out.attributes.push_back(kCertaintyColumn);
  return out;
}

}  // namespace

KRelation enc(const KRelation& ua_rel) {
  const Semiring& ps = ua_rel.semiring();
  if (ps.kind() != SemiringKind::pair ||
      ps.base().kind() != SemiringKind::natural)
    throw InvalidArgument("enc expects a UA N-relation");
  KRelation out(enc_schema(ua_rel.schema()), kNat);
  for (const auto& [t, pair] : ua_rel.rows()) {
    const std::uint64_t d = pair.pair_d().as_nat();
    const std::uint64_t c = pair.pair_c().as_nat();
    if (c > d)
      throw InvariantViolation("pair " + ps.render(pair) +
                               " breaks the c <= d invariant");
    Tuple certain = t;
    certain.push_back(Value(std::int64_t{1}));
    out.set(std::move(certain), Element(c));
    Tuple uncertain = t;
    uncertain.push_back(Value(std::int64_t{0}));
    out.set(std::move(uncertain), Element(d - c));
  }
  return out;
}

Database enc(const UADB& db) {
  db.validate();
  Database out;
  for (const auto& [name, rel] : db.relations) {
    KRelation e = enc(rel);
    e.rename(name);
    out.emplace(name, std::move(e));
  }
  return out;
}

KRelation dec(const KRelation& enc_rel) {
  if (enc_rel.semiring().kind() != SemiringKind::natural)
    throw InvalidArgument("dec expects an N-relation");
  const Schema& s = enc_rel.schema();
  if (s.attributes.empty() || s.attributes.back() != kCertaintyColumn)
    throw InvalidArgument("dec expects a trailing C attribute");
  Schema base = s;
  base.attributes.pop_back();

  const Semiring pair = Semiring::pair_of(kNat);
  KRelation out(base, pair);
  std::map<Tuple, std::pair<std::uint64_t, std::uint64_t>, TupleLess> acc;
  for (const auto& [t, k] : enc_rel.rows()) {
    const auto* flag = std::get_if<std::int64_t>(&t.back());
    if (!flag || (*flag != 0 && *flag != 1))
      throw InvariantViolation("C column value must be 0 or 1, got " +
                               to_display(t.back()));
    Tuple bare(t.begin(), t.end() - 1);
    auto& entry = acc[std::move(bare)];
    if (*flag == 1) {
      entry.second = checked_add(entry.second, k.as_nat());
    } else {
      entry.first = checked_add(entry.first, k.as_nat());
    }
  }
  for (auto& [t, counts] : acc) {
    const std::uint64_t c = counts.second;
    const std::uint64_t d = checked_add(counts.first, c);
    out.set(t, Element::pair(Element(d), Element(c)));
  }
  return out;
}

namespace {

// Output relation name of a rewritten subquery, mirroring the evaluator's
// naming so the qualified C columns of a join can be predicted without
// schema access.
std::string output_name(const Query& q) {
  if (const auto* r = std::get_if<RelRef>(&q.node)) return r->name;
  if (const auto* s = std::get_if<Select>(&q.node))
    return output_name(*s->input);
  if (const auto* p = std::get_if<Project>(&q.node))
    return output_name(*p->input);
  if (const auto* m = std::get_if<MergeMin>(&q.node))
    return output_name(*m->input);
  return "";
}

std::string qualified_c(const std::string& own, const std::string& other,
                        bool left) {
  const std::string fallback = left ? "q1" : "q2";
  const std::string base =
      (own.empty() || own == other) ? fallback : own;
  return base + "." + kCertaintyColumn;
}

QueryPtr rewrite_node(const Query& q) {
  if (const auto* r = std::get_if<RelRef>(&q.node)) return q::rel(r->name);
  if (const auto* s = std::get_if<Select>(&q.node))
    return q::select(s->pred, rewrite_node(*s->input));
  if (const auto* p = std::get_if<Project>(&q.node)) {
    std::vector<std::string> attrs = p->attrs;
    attrs.push_back(kCertaintyColumn);
    return q::project(std::move(attrs), rewrite_node(*p->input));
  }
  if (const auto* j = std::get_if<Join>(&q.node)) {
    QueryPtr left = rewrite_node(*j->left);
    QueryPtr right = rewrite_node(*j->right);
    const std::string ln = output_name(*left);
    const std::string rn = output_name(*right);
    return q::merge_min(qualified_c(ln, rn, true), qualified_c(rn, ln, false),
                        kCertaintyColumn,
                        q::join(j->pred, std::move(left), std::move(right)));
  }
  if (const auto* c = std::get_if<CrossProduct>(&q.node)) {
    QueryPtr left = rewrite_node(*c->left);
    QueryPtr right = rewrite_node(*c->right);
    const std::string ln = output_name(*left);
    const std::string rn = output_name(*right);
    return q::merge_min(qualified_c(ln, rn, true), qualified_c(rn, ln, false),
                        kCertaintyColumn,
                        q::cross(std::move(left), std::move(right)));
  }
  if (const auto* u = std::get_if<UnionAll>(&q.node))
    return q::union_all(rewrite_node(*u->left), rewrite_node(*u->right));
  throw InvalidArgument("query is outside RA+");
}

std::string sql_node(const Query& q, int indent);

std::string pad(int indent) { return std::string(indent * 2, ' '); }

std::string subquery_sql(const Query& q, const std::string& alias,
                         int indent) {
  if (const auto* r = std::get_if<RelRef>(&q.node))
    return r->name + " " + alias;
  return "(" + sql_node(q, indent + 1) + ") " + alias;
}

std::string sql_node(const Query& q, int indent) {
  if (const auto* r = std::get_if<RelRef>(&q.node))
    return "SELECT * FROM " + r->name;
  if (const auto* s = std::get_if<Select>(&q.node))
    return "SELECT * FROM " + subquery_sql(*s->input, "Q1", indent) +
           " WHERE " + s->pred.to_sql();
  if (const auto* p = std::get_if<Project>(&q.node)) {
    std::string cols;
    for (const auto& a : p->attrs) cols += a + ", ";
    cols += kCertaintyColumn;
    return "SELECT " + cols + " FROM " + subquery_sql(*p->input, "Q1", indent);
  }
  if (const auto* j = std::get_if<Join>(&q.node)) {
    return "SELECT Q1.*, Q2.*, Q1.C*Q2.C AS C FROM " +
           subquery_sql(*j->left, "Q1", indent) + ", " +
           subquery_sql(*j->right, "Q2", indent) + " WHERE " +
           j->pred.to_sql();
  }
  if (const auto* c = std::get_if<CrossProduct>(&q.node)) {
    return "SELECT Q1.*, Q2.*, Q1.C*Q2.C AS C FROM " +
           subquery_sql(*c->left, "Q1", indent) + ", " +
           subquery_sql(*c->right, "Q2", indent);
  }
  if (const auto* u = std::get_if<UnionAll>(&q.node)) {
    return sql_node(*u->left, indent) + "\n" + pad(indent) + "UNION ALL\n" +
           pad(indent) + sql_node(*u->right, indent);
  }
  throw InvalidArgument("query is outside RA+");
}

}  // namespace

Query rewrite_ra(const Query& q) { return *rewrite_node(q); }

std::string emit_sql(const Query& q) { return sql_node(q, 0); }

namespace {

std::string attr_list(const std::vector<std::string>& attrs) {
  std::string out;
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    if (i) out += ", ";
    out += attrs[i];
  }
  return out;
}

}  // namespace

std::string emit_labeling_sql(ModelKind kind, const LabelingColumns& cols) {
  if (cols.attrs.empty())
    throw InvalidArgument("labeling SQL needs the data column names");
  const std::string a = attr_list(cols.attrs);
  switch (kind) {
    case ModelKind::ti:
      return "SELECT " + a + ",\n"
             "       CASE WHEN " + cols.probability + " = 1\n"
             "            THEN 1\n"
             "            ELSE 0\n"
             "       END AS C\n"
             "FROM " + cols.table + "\n"
             "WHERE " + cols.probability + " >= 0.5";
    case ModelKind::xdb:
      return "SELECT " + a + ",\n"
             "       CASE WHEN " + cols.probability + " = 1\n"
             "            THEN 1\n"
             "            ELSE 0\n"
             "       END AS C\n"
             "FROM " + cols.table + "\n"
             "WHERE " + cols.altid + " = FIRST_VALUE(" + cols.altid +
             ") OVER w1\n"
             "      AND max(" + cols.probability + ") OVER w2\n"
             "          >= 1 - (sum(" + cols.probability + ") OVER w2)\n"
             "WINDOW w1 AS (PARTITION BY " + cols.xid + " ORDER BY " +
             cols.probability + " DESC),\n"
             "       w2 AS (PARTITION BY " + cols.xid + ")";
    case ModelKind::ctable: {
      if (cols.vars.empty())
        throw InvalidArgument("C-table labeling SQL needs variable columns");
      std::string guard;
      for (std::size_t i = 0; i < cols.vars.size(); ++i) {
        if (i) guard += " AND ";
        guard += cols.vars[i] + " IS NULL";
      }
      return "SELECT " + a + ",\n"
             "       CASE WHEN isTautology(" + cols.local_condition + ")\n"
             "            THEN 1\n"
             "            ELSE 0\n"
             "       END AS C\n"
             "FROM " + cols.table + "\n"
             "WHERE " + guard;
    }
  }
  throw InvalidArgument("unknown model kind");
}

}  // namespace uadb
