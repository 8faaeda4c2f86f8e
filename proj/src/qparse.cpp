#include "uadb/qparse.hpp"

#include <cctype>
#include <variant>
#include <vector>

#include "uadb/errors.hpp"

namespace uadb {

namespace {

struct SExpr {
  // Either an atom (token text, with a flag for quoted strings) or a list.
  std::string atom;
  bool quoted = false;
  bool is_list = false;
  std::vector<SExpr> items;
};

class SExprParser {
 public:
  explicit SExprParser(const std::string& text) : text_(text) {}

  SExpr parse() {
    SExpr e = parse_one();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("trailing input in query at offset " +
                       std::to_string(pos_));
    return e;
  }

 private:
  SExpr parse_one() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of query");
    if (text_[pos_] == '(') {
      ++pos_;
      SExpr list;
      list.is_list = true;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unbalanced parenthesis");
        if (text_[pos_] == ')') {
          ++pos_;
          return list;
        }
        list.items.push_back(parse_one());
      }
    }
    if (text_[pos_] == '\'' || text_[pos_] == '"') {
      const char quote = text_[pos_++];
      SExpr atom;
      atom.quoted = true;
      while (pos_ < text_.size() && text_[pos_] != quote)
        atom.atom += text_[pos_++];
      if (pos_ >= text_.size()) throw ParseError("unterminated string");
      ++pos_;
      return atom;
    }
    SExpr atom;
    while (pos_ < text_.size() &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      atom.atom += text_[pos_++];
    }
    if (atom.atom.empty())
      throw ParseError("unexpected character at offset " +
                       std::to_string(pos_));
    return atom;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

bool is_number(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  bool digits = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits = true;
    } else if (s[i] != '.') {
      return false;
    }
  }
  return digits;
}

// An atom is a constant when quoted or shaped like a literal; otherwise it
// names an attribute.
std::optional<Value> constant_of(const SExpr& e) {
  if (e.is_list) return std::nullopt;
  if (e.quoted) return Value(e.atom);
  if (e.atom == "true") return Value(true);
  if (e.atom == "false") return Value(false);
  if (e.atom == "null") return Value(Null{});
  if (is_number(e.atom)) {
    if (e.atom.find('.') != std::string::npos)
      return Value(std::stod(e.atom));
    return Value(static_cast<std::int64_t>(std::stoll(e.atom)));
  }
  return std::nullopt;
}

std::optional<CmpOp> cmp_of(const std::string& s) {
  if (s == "=") return CmpOp::eq;
  if (s == "!=") return CmpOp::ne;
  if (s == "<") return CmpOp::lt;
  if (s == "<=") return CmpOp::le;
  if (s == ">") return CmpOp::gt;
  if (s == ">=") return CmpOp::ge;
  return std::nullopt;
}

void expect_arity(const SExpr& e, std::size_t n, const std::string& what) {
  if (e.items.size() != n)
    throw ParseError(what + " expects " + std::to_string(n - 1) +
                     " arguments");
}

Predicate parse_pred(const SExpr& e) {
  if (!e.is_list || e.items.empty())
    throw ParseError("predicate must be a list");
  const std::string& head = e.items[0].atom;
  if (auto op = cmp_of(head)) {
    expect_arity(e, 3, "comparison");
    const SExpr& lhs = e.items[1];
    const SExpr& rhs = e.items[2];
    if (lhs.is_list || rhs.is_list)
      throw ParseError("comparison operands must be atoms");
    const auto lconst = constant_of(lhs);
    const auto rconst = constant_of(rhs);
    if (!lconst && !rconst)
      return Predicate::cmp_attrs(lhs.atom, *op, rhs.atom);
    if (!lconst && rconst)
      return Predicate::cmp_const(lhs.atom, *op, *rconst);
    if (lconst && !rconst)
      return Predicate::cmp_const(rhs.atom, flip(*op), *lconst);
    throw ParseError("comparison needs at least one attribute");
  }
  if (head == "and") {
    expect_arity(e, 3, "and");
    return Predicate::conj(parse_pred(e.items[1]), parse_pred(e.items[2]));
  }
  if (head == "or") {
    expect_arity(e, 3, "or");
    return Predicate::disj(parse_pred(e.items[1]), parse_pred(e.items[2]));
  }
  if (head == "not") {
    expect_arity(e, 2, "not");
    return Predicate::negation(parse_pred(e.items[1]));
  }
  throw ParseError("unknown predicate operator '" + head + "'");
}

std::vector<std::string> parse_attr_list(const SExpr& e) {
  if (!e.is_list) throw ParseError("expected an attribute list");
  std::vector<std::string> out;
  for (const auto& item : e.items) {
    if (item.is_list || item.quoted)
      throw ParseError("attribute lists hold bare names");
    out.push_back(item.atom);
  }
  return out;
}

QueryPtr parse_query_expr(const SExpr& e) {
  if (!e.is_list || e.items.empty() || e.items[0].is_list)
    throw ParseError("query must be an operator list");
  const std::string& head = e.items[0].atom;
  if (head == "rel") {
    expect_arity(e, 2, "rel");
    return q::rel(e.items[1].atom);
  }
  if (head == "select") {
    expect_arity(e, 3, "select");
    return q::select(parse_pred(e.items[1]), parse_query_expr(e.items[2]));
  }
  if (head == "project") {
    expect_arity(e, 3, "project");
    return q::project(parse_attr_list(e.items[1]),
                      parse_query_expr(e.items[2]));
  }
  if (head == "join") {
    expect_arity(e, 4, "join");
    return q::join(parse_pred(e.items[1]), parse_query_expr(e.items[2]),
                   parse_query_expr(e.items[3]));
  }
  if (head == "cross") {
    expect_arity(e, 3, "cross");
    return q::cross(parse_query_expr(e.items[1]), parse_query_expr(e.items[2]));
  }
  if (head == "union") {
    expect_arity(e, 3, "union");
    return q::union_all(parse_query_expr(e.items[1]),
                        parse_query_expr(e.items[2]));
  }
  throw ParseError("unknown query operator '" + head + "'");
}

UExprPtr parse_uexpr(const SExpr& e) {
  if (!e.is_list) {
    if (auto c = constant_of(e)) return ue::constant(*c);
    return ue::attr(e.atom);
  }
  if (e.items.empty() || e.items[0].is_list)
    throw ParseError("expression must start with an operator");
  const std::string& head = e.items[0].atom;
  if (head == "+" || head == "-" || head == "*") {
    expect_arity(e, 3, head);
    const ArithOp op = head == "+"   ? ArithOp::add
                       : head == "-" ? ArithOp::sub
                                     : ArithOp::mul;
    return ue::arith(op, parse_uexpr(e.items[1]), parse_uexpr(e.items[2]));
  }
  if (auto op = cmp_of(head)) {
    expect_arity(e, 3, head);
    return ue::cmp(*op, parse_uexpr(e.items[1]), parse_uexpr(e.items[2]));
  }
  if (head == "and") {
    expect_arity(e, 3, "and");
    return ue::conj(parse_uexpr(e.items[1]), parse_uexpr(e.items[2]));
  }
  if (head == "or") {
    expect_arity(e, 3, "or");
    return ue::disj(parse_uexpr(e.items[1]), parse_uexpr(e.items[2]));
  }
  if (head == "not") {
    expect_arity(e, 2, "not");
    return ue::negation(parse_uexpr(e.items[1]));
  }
  if (head == "if") {
    expect_arity(e, 4, "if");
    return ue::cond(parse_uexpr(e.items[1]), parse_uexpr(e.items[2]),
                    parse_uexpr(e.items[3]));
  }
  if (head == "concat") {
    expect_arity(e, 3, "concat");
    return ue::concat(parse_uexpr(e.items[1]), parse_uexpr(e.items[2]));
  }
  throw ParseError("unknown expression operator '" + head + "'");
}

std::optional<AggFn> agg_of(const std::string& s) {
  if (s == "count") return AggFn::count;
  if (s == "sum") return AggFn::sum;
  if (s == "min") return AggFn::min;
  if (s == "max") return AggFn::max;
  return std::nullopt;
}

UAQueryPtr parse_uaa_expr(const SExpr& e) {
  if (!e.is_list || e.items.empty() || e.items[0].is_list)
    throw ParseError("query must be an operator list");
  const std::string& head = e.items[0].atom;
  if (head == "rel") {
    expect_arity(e, 2, "rel");
    return uq::rel(e.items[1].atom);
  }
  if (head == "select") {
    expect_arity(e, 3, "select");
    return uq::select(parse_pred(e.items[1]), parse_uaa_expr(e.items[2]));
  }
  if (head == "project") {
    expect_arity(e, 3, "project");
    const SExpr& list = e.items[1];
    if (!list.is_list) throw ParseError("expected a projection list");
    std::vector<UProjectItem> items;
    for (const auto& item : list.items) {
      if (!item.is_list) {
        items.push_back({ue::attr(item.atom), item.atom});
        continue;
      }
      if (item.items.size() != 3 || item.items[0].atom != "as")
        throw ParseError("projection item must be a name or (as name expr)");
      items.push_back({parse_uexpr(item.items[2]), item.items[1].atom});
    }
    return uq::project(std::move(items), parse_uaa_expr(e.items[2]));
  }
  if (head == "join") {
    expect_arity(e, 4, "join");
    return uq::join(parse_pred(e.items[1]), parse_uaa_expr(e.items[2]),
                    parse_uaa_expr(e.items[3]));
  }
  if (head == "cross") {
    expect_arity(e, 3, "cross");
    return uq::cross(parse_uaa_expr(e.items[1]), parse_uaa_expr(e.items[2]));
  }
  if (head == "union") {
    expect_arity(e, 3, "union");
    return uq::union_all(parse_uaa_expr(e.items[1]),
                         parse_uaa_expr(e.items[2]));
  }
  if (head == "difference") {
    expect_arity(e, 3, "difference");
    return uq::difference(parse_uaa_expr(e.items[1]),
                          parse_uaa_expr(e.items[2]));
  }
  if (head == "aggregate") {
    if (e.items.size() != 4 && e.items.size() != 5)
      throw ParseError("aggregate expects (aggregate (attrs) fn [attr] q)");
    std::vector<std::string> group = parse_attr_list(e.items[1]);
    const auto fn = agg_of(e.items[2].atom);
    if (!fn) throw ParseError("unknown aggregate '" + e.items[2].atom + "'");
    std::string agg_attr;
    std::size_t qpos = 3;
    if (e.items.size() == 5) {
      agg_attr = e.items[3].atom;
      qpos = 4;
    } else if (*fn != AggFn::count) {
      throw ParseError("aggregate " + e.items[2].atom +
                       " needs an attribute");
    }
    return uq::aggregate(std::move(group), *fn, std::move(agg_attr),
                         parse_uaa_expr(e.items[qpos]));
  }
  throw ParseError("unknown query operator '" + head + "'");
}

}  // namespace

QueryPtr parse_query(const std::string& text) {
  return parse_query_expr(SExprParser(text).parse());
}

UAQueryPtr parse_uaa_query(const std::string& text) {
  return parse_uaa_expr(SExprParser(text).parse());
}

}  // namespace uadb
