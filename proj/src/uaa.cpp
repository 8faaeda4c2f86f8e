#include "uadb/uaa.hpp"

#include <algorithm>

#include "uadb/errors.hpp"

namespace uadb {

namespace {

const Semiring kPair = Semiring::pair_of(Semiring::natural());

Element pair_of(std::uint64_t d, std::uint64_t c) {
  return Element::pair(Element(d), Element(c));
}

std::uint64_t d_of(const Element& p) { return p.pair_d().as_nat(); }
std::uint64_t c_of(const Element& p) { return p.pair_c().as_nat(); }

}  // namespace

bool annotated_identical(const AnnotatedValue& a, const AnnotatedValue& b) {
  return a.certain == b.certain && value_identical(a.value, b.value);
}

std::string to_display(const AnnotatedValue& v) {
  return to_display(v.value) + (v.certain ? "^T" : "^F");
}

Tuple strip(const AnnotatedTuple& t) {
  Tuple out;
  out.reserve(t.size());
  for (const auto& v : t) out.push_back(v.value);
  return out;
}

std::string to_display(const AnnotatedTuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += to_display(t[i]);
  }
  return out + ")";
}

bool AnnotatedTupleLess::operator()(const AnnotatedTuple& a,
                                    const AnnotatedTuple& b) const {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int r = value_order(a[i].value, b[i].value); r != 0) return r < 0;
    if (a[i].certain != b[i].certain) return a[i].certain;  // T sorts first
  }
  return a.size() < b.size();
}

void AnnotatedRelation::set(AnnotatedTuple t, Element pair) {
  if (t.size() != schema.arity())
    throw InvalidArgument("annotated tuple arity mismatch");
  if (!kPair.contains(pair))
    throw InvalidArgument("row annotation must be an N pair");
  if (c_of(pair) > d_of(pair))
    throw InvariantViolation("row annotation breaks c <= d");
  if (kPair.is_zero(pair)) {
    rows.erase(t);
  } else {
    rows.insert_or_assign(std::move(t), std::move(pair));
  }
}

void AnnotatedRelation::add(AnnotatedTuple t, Element pair) {
  auto it = rows.find(t);
  if (it == rows.end()) {
    set(std::move(t), std::move(pair));
    return;
  }
  set(std::move(t), kPair.add(it->second, pair));
}

void AnnotatedRelation::validate() const {
  for (const auto& [t, pair] : rows) {
    if (t.size() != schema.arity())
      throw InvalidArgument("annotated tuple arity mismatch");
    if (c_of(pair) > d_of(pair))
      throw InvariantViolation("row annotation breaks c <= d");
  }
}

namespace ue {

UExprPtr attr(std::string name) {
  return std::make_shared<const UExpr>(UExpr{UAttr{std::move(name)}});
}
UExprPtr constant(Value v, bool certain) {
  return std::make_shared<const UExpr>(
      UExpr{UConst{AnnotatedValue{std::move(v), certain}}});
}
UExprPtr arith(ArithOp op, UExprPtr l, UExprPtr r) {
  return std::make_shared<const UExpr>(
      UExpr{UArith{op, std::move(l), std::move(r)}});
}
UExprPtr cmp(CmpOp op, UExprPtr l, UExprPtr r) {
  return std::make_shared<const UExpr>(
      UExpr{UCmp{op, std::move(l), std::move(r)}});
}
UExprPtr negation(UExprPtr e) {
  return std::make_shared<const UExpr>(UExpr{UNot{std::move(e)}});
}
UExprPtr conj(UExprPtr l, UExprPtr r) {
  return std::make_shared<const UExpr>(UExpr{UAnd{std::move(l), std::move(r)}});
}
UExprPtr disj(UExprPtr l, UExprPtr r) {
  return std::make_shared<const UExpr>(UExpr{UOr{std::move(l), std::move(r)}});
}
UExprPtr cond(UExprPtr c, UExprPtr t, UExprPtr f) {
  return std::make_shared<const UExpr>(
      UExpr{UIf{std::move(c), std::move(t), std::move(f)}});
}
UExprPtr concat(UExprPtr l, UExprPtr r) {
  return std::make_shared<const UExpr>(
      UExpr{UConcat{std::move(l), std::move(r)}});
}

}  // namespace ue

namespace {

bool is_zero_value(const Value& v) { return is_numeric(v) && numeric_of(v) == 0; }

bool as_plain_bool(const AnnotatedValue& v, const char* what) {
  if (!is_bool(v.value))
    throw InvalidArgument(std::string(what) + " expects a boolean operand");
  return std::get<bool>(v.value);
}

Value plain_arith(ArithOp op, const Value& a, const Value& b) {
  if (!is_numeric(a) || !is_numeric(b))
    throw InvalidArgument("arithmetic over non-numeric values");
  if (std::holds_alternative<std::int64_t>(a) &&
      std::holds_alternative<std::int64_t>(b)) {
    const std::int64_t x = std::get<std::int64_t>(a);
    const std::int64_t y = std::get<std::int64_t>(b);
    std::int64_t r = 0;
    bool overflow = false;
    switch (op) {
      case ArithOp::add:
        overflow = __builtin_add_overflow(x, y, &r);
        break;
      case ArithOp::sub:
        overflow = __builtin_sub_overflow(x, y, &r);
        break;
      case ArithOp::mul:
        overflow = __builtin_mul_overflow(x, y, &r);
        break;
    }
    if (overflow) throw OverflowError("integer expression overflows");
    return Value(r);
  }
  const double x = numeric_of(a);
  const double y = numeric_of(b);
  switch (op) {
    case ArithOp::add:
      return Value(x + y);
    case ArithOp::sub:
      return Value(x - y);
    default:
      return Value(x * y);
  }
}

bool plain_cmp(CmpOp op, const Value& a, const Value& b) {
  if (is_null(a) || is_null(b)) {
    const bool both = is_null(a) && is_null(b);
    if (op == CmpOp::eq) return both;
    if (op == CmpOp::ne) return !both;
    return false;
  }
  if (op == CmpOp::eq || op == CmpOp::ne) {
    const bool same_family = (is_numeric(a) && is_numeric(b)) ||
                             (is_string(a) && is_string(b)) ||
                             (is_bool(a) && is_bool(b));
    if (!same_family)
      throw InvalidArgument("type mismatch comparing " + to_display(a) +
                            " with " + to_display(b));
    return op == CmpOp::eq ? value_equal(a, b) : !value_equal(a, b);
  }
  const auto c = value_compare(a, b);
  if (!c)
    throw InvalidArgument("type mismatch comparing " + to_display(a) +
                          " with " + to_display(b));
  switch (op) {
    case CmpOp::lt:
      return *c < 0;
    case CmpOp::le:
      return *c <= 0;
    case CmpOp::gt:
      return *c > 0;
    default:
      return *c >= 0;
  }
}

}  // namespace

AnnotatedValue eval_expr(const UExpr& e, const Schema& schema,
                         const AnnotatedTuple& t) {
  if (const auto* a = std::get_if<UAttr>(&e.node)) {
    const auto i = schema.index_of(a->name);
    if (!i) throw InvalidArgument("unknown attribute '" + a->name + "'");
    return t[*i];
  }
  if (const auto* k = std::get_if<UConst>(&e.node)) return k->value;

  if (const auto* ar = std::get_if<UArith>(&e.node)) {
    const AnnotatedValue l = eval_expr(*ar->left, schema, t);
    const AnnotatedValue r = eval_expr(*ar->right, schema, t);
    const Value v = plain_arith(ar->op, l.value, r.value);
    if (ar->op == ArithOp::mul) {
      // Multiplication by a certain zero is certainly zero.
      if ((is_zero_value(l.value) && l.certain) ||
          (is_zero_value(r.value) && r.certain))
        return {v, true};
    }
    return {v, l.certain && r.certain};
  }

  if (const auto* c = std::get_if<UCmp>(&e.node)) {
    const AnnotatedValue l = eval_expr(*c->left, schema, t);
    const AnnotatedValue r = eval_expr(*c->right, schema, t);
    // ne/le/ge are negations of the primitive comparisons; negation keeps
    // the label.
    return {Value(plain_cmp(c->op, l.value, r.value)),
            l.certain && r.certain};
  }

  if (const auto* n = std::get_if<UNot>(&e.node)) {
    const AnnotatedValue v = eval_expr(*n->inner, schema, t);
    return {Value(!as_plain_bool(v, "not")), v.certain};
  }

  if (const auto* a = std::get_if<UAnd>(&e.node)) {
    const AnnotatedValue l = eval_expr(*a->left, schema, t);
    const AnnotatedValue r = eval_expr(*a->right, schema, t);
    const bool v1 = as_plain_bool(l, "and");
    const bool v2 = as_plain_bool(r, "and");
    const bool det = (!v1 && l.certain) || (!v2 && r.certain) ||
                     (l.certain && r.certain);
    return {Value(v1 && v2), det};
  }

  if (const auto* o = std::get_if<UOr>(&e.node)) {
    const AnnotatedValue l = eval_expr(*o->left, schema, t);
    const AnnotatedValue r = eval_expr(*o->right, schema, t);
    const bool v1 = as_plain_bool(l, "or");
    const bool v2 = as_plain_bool(r, "or");
    const bool det =
        (v1 && l.certain) || (v2 && r.certain) || (l.certain && r.certain);
    return {Value(v1 || v2), det};
  }

  if (const auto* f = std::get_if<UIf>(&e.node)) {
    const AnnotatedValue c = eval_expr(*f->cond, schema, t);
    const AnnotatedValue tv = eval_expr(*f->then_branch, schema, t);
    const AnnotatedValue fv = eval_expr(*f->else_branch, schema, t);
    const bool v1 = as_plain_bool(c, "if");
    const bool det = (v1 && c.certain && tv.certain) ||
                     (!v1 && c.certain && fv.certain);
    return {v1 ? tv.value : fv.value, det};
  }

  const auto& cc = std::get<UConcat>(e.node);
  const AnnotatedValue l = eval_expr(*cc.left, schema, t);
  const AnnotatedValue r = eval_expr(*cc.right, schema, t);
  if (!is_string(l.value) || !is_string(r.value))
    throw InvalidArgument("concatenation expects strings");
  return {Value(std::get<std::string>(l.value) +
                std::get<std::string>(r.value)),
          l.certain && r.certain};
}

Element trans(const AnnotatedValue& res) {
  if (!is_bool(res.value))
    throw InvalidArgument("trans expects a boolean expression result");
  if (std::get<bool>(res.value))
    return res.certain ? pair_of(1, 1) : pair_of(1, 0);
  return pair_of(0, 0);
}

Element unit(const Element& pair) {
  if (c_of(pair) > 0) return pair_of(1, 1);
  if (d_of(pair) > 0) return pair_of(1, 0);
  return pair_of(0, 0);
}

namespace uq {

UAQueryPtr rel(std::string name) {
  return std::make_shared<const UAQuery>(UAQuery{URelRef{std::move(name)}});
}
UAQueryPtr select(Predicate p, UAQueryPtr in) {
  return std::make_shared<const UAQuery>(
      UAQuery{USelect{std::move(p), std::move(in)}});
}
UAQueryPtr project(std::vector<UProjectItem> items, UAQueryPtr in) {
  return std::make_shared<const UAQuery>(
      UAQuery{UProject{std::move(items), std::move(in)}});
}
UAQueryPtr project_attrs(std::vector<std::string> attrs, UAQueryPtr in) {
  std::vector<UProjectItem> items;
  for (auto& a : attrs) items.push_back({ue::attr(a), a});
  return project(std::move(items), std::move(in));
}
UAQueryPtr join(Predicate p, UAQueryPtr l, UAQueryPtr r) {
  return std::make_shared<const UAQuery>(
      UAQuery{UJoin{std::move(p), std::move(l), std::move(r)}});
}
UAQueryPtr cross(UAQueryPtr l, UAQueryPtr r) {
  return std::make_shared<const UAQuery>(
      UAQuery{UCross{std::move(l), std::move(r)}});
}
UAQueryPtr union_all(UAQueryPtr l, UAQueryPtr r) {
  return std::make_shared<const UAQuery>(
      UAQuery{UUnion{std::move(l), std::move(r)}});
}
UAQueryPtr aggregate(std::vector<std::string> group_attrs, AggFn fn,
                     std::string agg_attr, UAQueryPtr in) {
  return std::make_shared<const UAQuery>(UAQuery{UAggregate{
      std::move(group_attrs), fn, std::move(agg_attr), std::move(in)}});
}
UAQueryPtr difference(UAQueryPtr l, UAQueryPtr r) {
  return std::make_shared<const UAQuery>(
      UAQuery{UDifference{std::move(l), std::move(r)}});
}

}  // namespace uq

namespace {

// Interprets a plain predicate under U+ semantics: atoms become annotated
// comparisons (constants are certain), connectives follow the boolean
// combination rules.
AnnotatedValue eval_annotated_pred(const Predicate::Node& n,
                                   const Schema& schema,
                                   const AnnotatedTuple& t) {
  if (const auto* a = std::get_if<Predicate::Atom>(&n)) {
    UExprPtr lhs = ue::attr(a->lhs);
    UExprPtr rhs;
    if (const auto* attr = std::get_if<std::string>(&a->rhs)) {
      rhs = ue::attr(*attr);
    } else {
      rhs = ue::constant(std::get<Value>(a->rhs));
    }
    return eval_expr(*ue::cmp(a->op, std::move(lhs), std::move(rhs)), schema,
                     t);
  }
  if (const auto* c = std::get_if<Predicate::And>(&n)) {
    const AnnotatedValue l = eval_annotated_pred(*c->left, schema, t);
    const AnnotatedValue r = eval_annotated_pred(*c->right, schema, t);
    const bool v1 = std::get<bool>(l.value);
    const bool v2 = std::get<bool>(r.value);
    const bool det = (!v1 && l.certain) || (!v2 && r.certain) ||
                     (l.certain && r.certain);
    return {Value(v1 && v2), det};
  }
  if (const auto* d = std::get_if<Predicate::Or>(&n)) {
    const AnnotatedValue l = eval_annotated_pred(*d->left, schema, t);
    const AnnotatedValue r = eval_annotated_pred(*d->right, schema, t);
    const bool v1 = std::get<bool>(l.value);
    const bool v2 = std::get<bool>(r.value);
    const bool det =
        (v1 && l.certain) || (v2 && r.certain) || (l.certain && r.certain);
    return {Value(v1 || v2), det};
  }
  const AnnotatedValue v = eval_annotated_pred(
      *std::get<Predicate::Not>(n).inner, schema, t);
  return {Value(!std::get<bool>(v.value)), v.certain};
}

AnnotatedValue eval_pred_uaa(const Predicate& p, const Schema& schema,
                             const AnnotatedTuple& t) {
  if (p.trivially_true()) return {Value(true), true};
  return eval_annotated_pred(*p.root(), schema, t);
}

const AnnotatedRelation& resolve(const AnnotatedDatabase& db,
                                 const std::string& name) {
  auto it = db.find(name);
  if (it == db.end()) throw InvalidArgument("unknown relation '" + name + "'");
  return it->second;
}

struct AggAccumulator {
  AggFn fn;
  std::string attr_name;
  bool seen = false;
  bool any_double = false;
  std::int64_t int_acc = 0;
  double dbl_acc = 0;
  Value extremum;

  void feed(const Value& v, std::uint64_t mult) {
    if (fn == AggFn::count) {
      int_acc += static_cast<std::int64_t>(mult);
      seen = true;
      return;
    }
    if (fn == AggFn::sum) {
      if (!is_numeric(v))
        throw InvalidArgument("sum expects numeric values in '" + attr_name +
                              "'");
      if (std::holds_alternative<double>(v)) any_double = true;
      dbl_acc += numeric_of(v) * static_cast<double>(mult);
      if (std::holds_alternative<std::int64_t>(v))
        int_acc += std::get<std::int64_t>(v) * static_cast<std::int64_t>(mult);
      seen = true;
      return;
    }
    if (!seen) {
      extremum = v;
      seen = true;
      return;
    }
    const auto c = value_compare(v, extremum);
    if (!c)
      throw InvalidArgument("cannot order values of attribute '" + attr_name +
                            "'");
    if ((fn == AggFn::min && *c < 0) || (fn == AggFn::max && *c > 0))
      extremum = v;
  }

  Value result() const {
    switch (fn) {
      case AggFn::count:
        return Value(int_acc);
      case AggFn::sum:
        return any_double ? Value(dbl_acc) : Value(int_acc);
      default:
        return extremum;
    }
  }
};

Schema concat_annotated(const Schema& l, const Schema& r) {
  return concat_schemas(l, r);
}

}  // namespace

AnnotatedRelation eval_uaa(const AnnotatedDatabase& db, const UAQuery& q) {
  if (const auto* r = std::get_if<URelRef>(&q.node)) {
    AnnotatedRelation rel = resolve(db, r->name);
    rel.validate();
    return rel;
  }

  if (const auto* s = std::get_if<USelect>(&q.node)) {
    AnnotatedRelation in = eval_uaa(db, *s->input);
    s->pred.validate(in.schema);
    AnnotatedRelation out{in.schema, {}};
    for (const auto& [t, pair] : in.rows) {
      const Element factor = trans(eval_pred_uaa(s->pred, in.schema, t));
      out.add(t, kPair.mul(pair, factor));
    }
    return out;
  }

  if (const auto* p = std::get_if<UProject>(&q.node)) {
    AnnotatedRelation in = eval_uaa(db, *p->input);
    if (p->items.empty())
      throw InvalidArgument("projection must keep at least one item");
    Schema out_schema;
    out_schema.name = in.schema.name;
    for (const auto& item : p->items) out_schema.attributes.push_back(item.name);
    AnnotatedRelation out{out_schema, {}};
    for (const auto& [t, pair] : in.rows) {
      AnnotatedTuple proj;
      proj.reserve(p->items.size());
      for (const auto& item : p->items)
        proj.push_back(eval_expr(*item.expr, in.schema, t));
      out.add(std::move(proj), pair);
    }
    return out;
  }

  if (const auto* j = std::get_if<UJoin>(&q.node)) {
    AnnotatedRelation l = eval_uaa(db, *j->left);
    AnnotatedRelation r = eval_uaa(db, *j->right);
    Schema out_schema = concat_annotated(l.schema, r.schema);
    j->pred.validate(out_schema);
    AnnotatedRelation out{out_schema, {}};
    for (const auto& [lt, lp] : l.rows) {
      for (const auto& [rt, rp] : r.rows) {
        AnnotatedTuple t = lt;
        t.insert(t.end(), rt.begin(), rt.end());
        const Element factor = trans(eval_pred_uaa(j->pred, out_schema, t));
        out.add(std::move(t), kPair.mul(kPair.mul(lp, rp), factor));
      }
    }
    return out;
  }

  if (const auto* c = std::get_if<UCross>(&q.node)) {
    UAQuery as_join{UJoin{Predicate::always_true(), c->left, c->right}};
    return eval_uaa(db, as_join);
  }

  if (const auto* u = std::get_if<UUnion>(&q.node)) {
    AnnotatedRelation l = eval_uaa(db, *u->left);
    AnnotatedRelation r = eval_uaa(db, *u->right);
    if (l.schema.attributes != r.schema.attributes)
      throw InvalidArgument("union operands have different schemas");
    Schema out_schema = l.schema;
    out_schema.name = "";
    AnnotatedRelation out{out_schema, {}};
    for (const auto& [t, pair] : l.rows) out.add(t, pair);
    for (const auto& [t, pair] : r.rows) out.add(t, pair);
    return out;
  }

  if (const auto* g = std::get_if<UAggregate>(&q.node)) {
    AnnotatedRelation in = eval_uaa(db, *g->input);
    std::vector<std::size_t> group_idx;
    for (const auto& a : g->group_attrs) {
      auto i = in.schema.index_of(a);
      if (!i) throw InvalidArgument("unknown group attribute '" + a + "'");
      group_idx.push_back(*i);
    }
    std::optional<std::size_t> agg_idx;
    if (g->fn != AggFn::count) {
      agg_idx = in.schema.index_of(g->agg_attr);
      if (!agg_idx)
        throw InvalidArgument("unknown aggregate attribute '" + g->agg_attr +
                              "'");
    }

    struct Group {
      std::vector<const AnnotatedTuple*> members;
      Element sum = pair_of(0, 0);
    };
    std::map<Tuple, Group, TupleLess> groups;
    for (const auto& [t, pair] : in.rows) {
      Tuple key;
      key.reserve(group_idx.size());
      for (auto i : group_idx) key.push_back(t[i].value);
      auto& grp = groups[std::move(key)];
      grp.members.push_back(&t);
      grp.sum = kPair.add(grp.sum, pair);
    }

    Schema out_schema;
    out_schema.name = "";
    out_schema.attributes = g->group_attrs;
    std::string agg_name;
    switch (g->fn) {
      case AggFn::count:
        agg_name = "count";
        break;
      case AggFn::sum:
        agg_name = "sum_" + g->agg_attr;
        break;
      case AggFn::min:
        agg_name = "min_" + g->agg_attr;
        break;
      case AggFn::max:
        agg_name = "max_" + g->agg_attr;
        break;
    }
    out_schema.attributes.push_back(agg_name);

    AnnotatedRelation out{out_schema, {}};
    const bool force_uncertain = group_idx.size() > 1;
    for (const auto& [key, grp] : groups) {
      const Element row = unit(grp.sum);

      AggAccumulator acc{g->fn, g->fn == AggFn::count ? "" : g->agg_attr};
      for (const auto* member : grp.members) {
        const std::uint64_t mult = d_of(in.rows.at(*member));
        acc.feed(agg_idx ? (*member)[*agg_idx].value : Value(), mult);
      }

      // Group-by labels come from a member whose unit matches the group
      // unit, preferring the most certain attribute labels; sorted member
      // order breaks ties.
      const AnnotatedTuple* chosen = nullptr;
      std::size_t best_certain = 0;
      for (const auto* member : grp.members) {
        if (unit(in.rows.at(*member)) != row) continue;
        std::size_t certain = 0;
        for (auto i : group_idx)
          if ((*member)[i].certain) ++certain;
        if (!chosen || certain > best_certain) {
          chosen = member;
          best_certain = certain;
        }
      }
      if (!chosen) chosen = grp.members.front();

      AnnotatedTuple result;
      result.reserve(group_idx.size() + 1);
      for (std::size_t gi = 0; gi < group_idx.size(); ++gi) {
        AnnotatedValue v = (*chosen)[group_idx[gi]];
        if (force_uncertain) v.certain = false;
        result.push_back(std::move(v));
      }
      // Aggregation results carry no completeness information and stay
      // uncertain.
      result.push_back(AnnotatedValue{acc.result(), false});
      out.add(std::move(result), row);
    }
    return out;
  }

  const auto& d = std::get<UDifference>(q.node);
  AnnotatedRelation l = eval_uaa(db, *d.left);
  AnnotatedRelation r = eval_uaa(db, *d.right);
  if (l.schema.attributes != r.schema.attributes)
    throw InvalidArgument("difference operands have different schemas");
  Schema out_schema = l.schema;
  out_schema.name = "";
  AnnotatedRelation out{out_schema, {}};
  for (const auto& [t, pair] : l.rows) {
    const std::uint64_t d1 = d_of(pair);
    std::uint64_t d2 = 0;
    if (auto it = r.rows.find(t); it != r.rows.end()) d2 = d_of(it->second);
    if (d1 <= d2) continue;  // bag monus on best-guess multiplicities
    AnnotatedTuple forced = t;
    for (auto& v : forced) v.certain = false;
    out.add(std::move(forced), pair_of(d1 - d2, 0));
  }
  return out;
}

UAQueryPtr lift_query(const Query& q) {
  if (const auto* r = std::get_if<RelRef>(&q.node)) return uq::rel(r->name);
  if (const auto* s = std::get_if<Select>(&q.node))
    return uq::select(s->pred, lift_query(*s->input));
  if (const auto* p = std::get_if<Project>(&q.node))
    return uq::project_attrs(p->attrs, lift_query(*p->input));
  if (const auto* j = std::get_if<Join>(&q.node))
    return uq::join(j->pred, lift_query(*j->left), lift_query(*j->right));
  if (const auto* c = std::get_if<CrossProduct>(&q.node))
    return uq::cross(lift_query(*c->left), lift_query(*c->right));
  if (const auto* u = std::get_if<UnionAll>(&q.node))
    return uq::union_all(lift_query(*u->left), lift_query(*u->right));
  throw InvalidArgument("query has no annotated counterpart");
}

}  // namespace uadb
