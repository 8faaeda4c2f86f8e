#include "uadb/query.hpp"

#include "uadb/errors.hpp"

namespace uadb {

std::string to_display(CmpOp op) {
  switch (op) {
    case CmpOp::eq:
      return "=";
    case CmpOp::ne:
      return "!=";
    case CmpOp::lt:
      return "<";
    case CmpOp::le:
      return "<=";
    case CmpOp::gt:
      return ">";
    case CmpOp::ge:
      return ">=";
  }
  return "?";
}

std::string to_sql(CmpOp op) {
  return op == CmpOp::ne ? "<>" : to_display(op);
}

CmpOp flip(CmpOp op) {
  switch (op) {
    case CmpOp::lt:
      return CmpOp::gt;
    case CmpOp::le:
      return CmpOp::ge;
    case CmpOp::gt:
      return CmpOp::lt;
    case CmpOp::ge:
      return CmpOp::le;
    default:
      return op;
  }
}

CmpOp negate(CmpOp op) {
  switch (op) {
    case CmpOp::eq:
      return CmpOp::ne;
    case CmpOp::ne:
      return CmpOp::eq;
    case CmpOp::lt:
      return CmpOp::ge;
    case CmpOp::le:
      return CmpOp::gt;
    case CmpOp::gt:
      return CmpOp::le;
    case CmpOp::ge:
      return CmpOp::lt;
  }
  return op;
}

Predicate Predicate::always_true() { return Predicate(nullptr); }

Predicate Predicate::cmp_const(std::string attr, CmpOp op, Value v) {
  return Predicate(std::make_shared<const Node>(
      Atom{std::move(attr), op, std::move(v)}));
}

Predicate Predicate::cmp_attrs(std::string lhs, CmpOp op, std::string rhs) {
  return Predicate(std::make_shared<const Node>(
      Atom{std::move(lhs), op, std::move(rhs)}));
}

Predicate Predicate::conj(Predicate a, Predicate b) {
  if (a.trivially_true()) return b;
  if (b.trivially_true()) return a;
  return Predicate(std::make_shared<const Node>(And{a.root_, b.root_}));
}

Predicate Predicate::disj(Predicate a, Predicate b) {
  if (a.trivially_true() || b.trivially_true()) return always_true();
  return Predicate(std::make_shared<const Node>(Or{a.root_, b.root_}));
}

Predicate Predicate::negation(Predicate p) {
  if (p.trivially_true())
    throw InvalidArgument("cannot negate the trivial predicate");
  return Predicate(std::make_shared<const Node>(Not{p.root_}));
}

namespace {

void validate_node(const Predicate::Node& n, const Schema& schema) {
  if (const auto* a = std::get_if<Predicate::Atom>(&n)) {
    if (!schema.index_of(a->lhs))
      throw InvalidArgument("predicate references missing attribute '" +
                            a->lhs + "'");
    if (const auto* r = std::get_if<std::string>(&a->rhs)) {
      if (!schema.index_of(*r))
        throw InvalidArgument("predicate references missing attribute '" + *r +
                              "'");
    }
    return;
  }
  if (const auto* c = std::get_if<Predicate::And>(&n)) {
    validate_node(*c->left, schema);
    validate_node(*c->right, schema);
    return;
  }
  if (const auto* d = std::get_if<Predicate::Or>(&n)) {
    validate_node(*d->left, schema);
    validate_node(*d->right, schema);
    return;
  }
  validate_node(*std::get<Predicate::Not>(n).inner, schema);
}

bool eval_atom(const Predicate::Atom& a, const Schema& schema,
               const Tuple& t) {
  const auto li = schema.index_of(a.lhs);
  if (!li) throw InvalidArgument("missing attribute '" + a.lhs + "'");
  const Value& lv = t[*li];
  Value rv;
  if (const auto* rattr = std::get_if<std::string>(&a.rhs)) {
    const auto ri = schema.index_of(*rattr);
    if (!ri) throw InvalidArgument("missing attribute '" + *rattr + "'");
    rv = t[*ri];
  } else {
    rv = std::get<Value>(a.rhs);
  }
  // Nulls compare equal only to themselves and fail ordering comparisons.
  if (is_null(lv) || is_null(rv)) {
    switch (a.op) {
      case CmpOp::eq:
        return is_null(lv) && is_null(rv);
      case CmpOp::ne:
        return !(is_null(lv) && is_null(rv));
      default:
        return false;
    }
  }
  if (a.op == CmpOp::eq || a.op == CmpOp::ne) {
    const bool same_family = (is_numeric(lv) && is_numeric(rv)) ||
                             (is_string(lv) && is_string(rv)) ||
                             (is_bool(lv) && is_bool(rv));
    if (!same_family)
      throw InvalidArgument("type mismatch comparing " + to_display(lv) +
                            " with " + to_display(rv));
    const bool eq = value_equal(lv, rv);
    return a.op == CmpOp::eq ? eq : !eq;
  }
  const auto c = value_compare(lv, rv);
  if (!c)
    throw InvalidArgument("type mismatch comparing " + to_display(lv) +
                          " with " + to_display(rv));
  switch (a.op) {
    case CmpOp::lt:
      return *c < 0;
    case CmpOp::le:
      return *c <= 0;
    case CmpOp::gt:
      return *c > 0;
    case CmpOp::ge:
      return *c >= 0;
    default:
      return false;
  }
}

bool eval_node(const Predicate::Node& n, const Schema& schema,
               const Tuple& t) {
  if (const auto* a = std::get_if<Predicate::Atom>(&n))
    return eval_atom(*a, schema, t);
  if (const auto* c = std::get_if<Predicate::And>(&n))
    return eval_node(*c->left, schema, t) && eval_node(*c->right, schema, t);
  if (const auto* d = std::get_if<Predicate::Or>(&n))
    return eval_node(*d->left, schema, t) || eval_node(*d->right, schema, t);
  return !eval_node(*std::get<Predicate::Not>(n).inner, schema, t);
}

std::string value_text(const Value& v, bool sql) {
  if (is_string(v)) {
    std::string body = std::get<std::string>(v);
    if (sql) {
      std::string esc;
      for (char ch : body) {
        esc += ch;
        if (ch == '\'') esc += '\'';
      }
      body = esc;
    }
    return "'" + body + "'";
  }
  if (sql && is_null(v)) return "NULL";
  if (sql && is_bool(v)) return std::get<bool>(v) ? "TRUE" : "FALSE";
  return to_display(v);
}

std::string node_text(const Predicate::Node& n, bool sql) {
  if (const auto* a = std::get_if<Predicate::Atom>(&n)) {
    std::string rhs;
    if (const auto* attr = std::get_if<std::string>(&a->rhs)) {
      rhs = *attr;
    } else {
      rhs = value_text(std::get<Value>(a->rhs), sql);
    }
    const std::string op = sql ? to_sql(a->op) : to_display(a->op);
    return a->lhs + " " + op + " " + rhs;
  }
  if (const auto* c = std::get_if<Predicate::And>(&n))
    return "(" + node_text(*c->left, sql) + (sql ? " AND " : " and ") +
           node_text(*c->right, sql) + ")";
  if (const auto* d = std::get_if<Predicate::Or>(&n))
    return "(" + node_text(*d->left, sql) + (sql ? " OR " : " or ") +
           node_text(*d->right, sql) + ")";
  return (sql ? "NOT (" : "not (") +
         node_text(*std::get<Predicate::Not>(n).inner, sql) + ")";
}

}  // namespace

void Predicate::validate(const Schema& schema) const {
  if (root_) validate_node(*root_, schema);
}

bool Predicate::eval(const Schema& schema, const Tuple& t) const {
  return !root_ || eval_node(*root_, schema, t);
}

std::string Predicate::to_text() const {
  return root_ ? node_text(*root_, false) : "true";
}

std::string Predicate::to_sql() const {
  return root_ ? node_text(*root_, true) : "TRUE";
}

namespace q {

QueryPtr rel(std::string name) {
  return std::make_shared<const Query>(Query{RelRef{std::move(name)}});
}

QueryPtr select(Predicate p, QueryPtr in) {
  return std::make_shared<const Query>(
      Query{Select{std::move(p), std::move(in)}});
}

QueryPtr project(std::vector<std::string> attrs, QueryPtr in) {
  return std::make_shared<const Query>(
      Query{Project{std::move(attrs), std::move(in)}});
}

QueryPtr join(Predicate p, QueryPtr l, QueryPtr r) {
  return std::make_shared<const Query>(
      Query{Join{std::move(p), std::move(l), std::move(r)}});
}

QueryPtr cross(QueryPtr l, QueryPtr r) {
  return std::make_shared<const Query>(
      Query{CrossProduct{std::move(l), std::move(r)}});
}

QueryPtr union_all(QueryPtr l, QueryPtr r) {
  return std::make_shared<const Query>(
      Query{UnionAll{std::move(l), std::move(r)}});
}

QueryPtr merge_min(std::string a, std::string b, std::string out,
                   QueryPtr in) {
  return std::make_shared<const Query>(Query{
      MergeMin{std::move(a), std::move(b), std::move(out), std::move(in)}});
}

}  // namespace q

namespace {

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += " ";
    out += names[i];
  }
  return out;
}

}  // namespace

std::string to_display(const Query& query) {
  if (const auto* r = std::get_if<RelRef>(&query.node))
    return "(rel " + r->name + ")";
  if (const auto* s = std::get_if<Select>(&query.node))
    return "(select " + s->pred.to_text() + " " + to_display(*s->input) + ")";
  if (const auto* p = std::get_if<Project>(&query.node))
    return "(project (" + join_names(p->attrs) + ") " +
           to_display(*p->input) + ")";
  if (const auto* j = std::get_if<Join>(&query.node))
    return "(join " + j->pred.to_text() + " " + to_display(*j->left) + " " +
           to_display(*j->right) + ")";
  if (const auto* c = std::get_if<CrossProduct>(&query.node))
    return "(cross " + to_display(*c->left) + " " + to_display(*c->right) +
           ")";
  if (const auto* u = std::get_if<UnionAll>(&query.node))
    return "(union " + to_display(*u->left) + " " + to_display(*u->right) +
           ")";
  const auto& m = std::get<MergeMin>(query.node);
  return "(merge-min " + m.a + " " + m.b + " -> " + m.out + " " +
         to_display(*m.input) + ")";
}

}  // namespace uadb
