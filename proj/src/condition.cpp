#include "uadb/condition.hpp"

#include <cctype>
#include <optional>

#include "uadb/errors.hpp"

namespace uadb {

bool term_identical(const CtTerm& a, const CtTerm& b) {
  if (a.kind != b.kind) return false;
  return a.is_var() ? a.var == b.var : value_identical(a.value, b.value);
}

std::string to_display(const CtTerm& t) {
  if (t.is_var()) return t.var;
  if (is_string(t.value)) return "'" + std::get<std::string>(t.value) + "'";
  return to_display(t.value);
}

Condition Condition::always_true() { return Condition(nullptr); }

Condition Condition::atom(CtTerm lhs, CmpOp op, CtTerm rhs) {
  return Condition(std::make_shared<const Node>(
      Atom{std::move(lhs), op, std::move(rhs)}));
}

Condition Condition::conj(Condition a, Condition b) {
  if (a.trivially_true()) return b;
  if (b.trivially_true()) return a;
  return Condition(std::make_shared<const Node>(And{a.root_, b.root_}));
}

Condition Condition::disj(Condition a, Condition b) {
  if (a.trivially_true() || b.trivially_true()) return always_true();
  return Condition(std::make_shared<const Node>(Or{a.root_, b.root_}));
}

Condition Condition::negation(Condition c) {
  if (c.trivially_true())
    throw InvalidArgument("cannot negate the trivial condition");
  return Condition(std::make_shared<const Node>(Not{c.root_}));
}

namespace {

Value term_value(const CtTerm& t, const Valuation& v) {
  if (!t.is_var()) return t.value;
  auto it = v.find(t.var);
  if (it == v.end())
    throw InvalidArgument("valuation does not bind variable '" + t.var + "'");
  return it->second;
}

bool eval_cmp(const Value& l, CmpOp op, const Value& r) {
  if (is_null(l) || is_null(r)) {
    const bool both = is_null(l) && is_null(r);
    if (op == CmpOp::eq) return both;
    if (op == CmpOp::ne) return !both;
    return false;
  }
  if (op == CmpOp::eq || op == CmpOp::ne) {
    const bool eq = value_equal(l, r);
    return op == CmpOp::eq ? eq : !eq;
  }
  const auto c = value_compare(l, r);
  if (!c)
    throw InvalidArgument("type mismatch comparing " + to_display(l) +
                          " with " + to_display(r));
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

bool eval_node(const Condition::Node& n, const Valuation& v) {
  if (const auto* a = std::get_if<Condition::Atom>(&n))
    return eval_cmp(term_value(a->lhs, v), a->op, term_value(a->rhs, v));
  if (const auto* c = std::get_if<Condition::And>(&n))
    return eval_node(*c->left, v) && eval_node(*c->right, v);
  if (const auto* d = std::get_if<Condition::Or>(&n))
    return eval_node(*d->left, v) || eval_node(*d->right, v);
  return !eval_node(*std::get<Condition::Not>(n).inner, v);
}

void collect_node(const Condition::Node& n, std::vector<std::string>& out) {
  if (const auto* a = std::get_if<Condition::Atom>(&n)) {
    if (a->lhs.is_var()) out.push_back(a->lhs.var);
    if (a->rhs.is_var()) out.push_back(a->rhs.var);
    return;
  }
  if (const auto* c = std::get_if<Condition::And>(&n)) {
    collect_node(*c->left, out);
    collect_node(*c->right, out);
    return;
  }
  if (const auto* d = std::get_if<Condition::Or>(&n)) {
    collect_node(*d->left, out);
    collect_node(*d->right, out);
    return;
  }
  collect_node(*std::get<Condition::Not>(n).inner, out);
}

std::string node_text(const Condition::Node& n) {
  if (const auto* a = std::get_if<Condition::Atom>(&n)) {
    const std::string op =
        a->op == CmpOp::ne ? "<>" : to_display(a->op);
    return to_display(a->lhs) + op + to_display(a->rhs);
  }
  if (const auto* c = std::get_if<Condition::And>(&n))
    return "(" + node_text(*c->left) + " AND " + node_text(*c->right) + ")";
  if (const auto* d = std::get_if<Condition::Or>(&n))
    return "(" + node_text(*d->left) + " OR " + node_text(*d->right) + ")";
  return "NOT (" + node_text(*std::get<Condition::Not>(n).inner) + ")";
}

}  // namespace

bool Condition::eval(const Valuation& v) const {
  return !root_ || eval_node(*root_, v);
}

void Condition::collect_variables(std::vector<std::string>& out) const {
  if (root_) collect_node(*root_, out);
}

std::string Condition::to_text() const {
  return root_ ? node_text(*root_) : "TRUE";
}

namespace {

// Recursive-descent parser for the LC grammar.
class ConditionParser {
 public:
  explicit ConditionParser(const std::string& text) : text_(text) {}

  Condition parse() {
    skip_ws();
    if (pos_ >= text_.size()) return Condition::always_true();
    Condition c = parse_or();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("trailing input in condition at offset " +
                       std::to_string(pos_));
    return c;
  }

 private:
  Condition parse_or() {
    Condition left = parse_and();
    while (peek_keyword("OR")) {
      consume_keyword("OR");
      left = Condition::disj(std::move(left), parse_and());
    }
    return left;
  }

  Condition parse_and() {
    Condition left = parse_unary();
    while (peek_keyword("AND")) {
      consume_keyword("AND");
      left = Condition::conj(std::move(left), parse_unary());
    }
    return left;
  }

  Condition parse_unary() {
    skip_ws();
    if (peek_keyword("NOT")) {
      consume_keyword("NOT");
      return Condition::negation(parse_unary());
    }
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      Condition c = parse_or();
      skip_ws();
      expect(')');
      return c;
    }
    return parse_atom();
  }

  Condition parse_atom() {
    CtTerm lhs = parse_term();
    CmpOp op = parse_op();
    CtTerm rhs = parse_term();
    return Condition::atom(std::move(lhs), op, std::move(rhs));
  }

  CmpOp parse_op() {
    skip_ws();
    if (match("<>")) return CmpOp::ne;
    if (match("<=")) return CmpOp::le;
    if (match(">=")) return CmpOp::ge;
    if (match("=")) return CmpOp::eq;
    if (match("<")) return CmpOp::lt;
    if (match(">")) return CmpOp::gt;
    throw ParseError("expected comparison operator at offset " +
                     std::to_string(pos_));
  }

  CtTerm parse_term() {
    skip_ws();
    if (pos_ >= text_.size())
      throw ParseError("expected term at end of condition");
    const char c = text_[pos_];
    if (c == '\'') {
      ++pos_;
      std::string body;
      while (pos_ < text_.size() && text_[pos_] != '\'') body += text_[pos_++];
      expect('\'');
      return CtTerm::constant(Value(std::move(body)));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
      std::string num;
      num += text_[pos_++];
      bool decimal = false;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '.')) {
        if (text_[pos_] == '.') decimal = true;
        num += text_[pos_++];
      }
      if (decimal) return CtTerm::constant(Value(std::stod(num)));
      return CtTerm::constant(
          Value(static_cast<std::int64_t>(std::stoll(num))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        word += text_[pos_++];
      }
      if (word == "true") return CtTerm::constant(Value(true));
      if (word == "false") return CtTerm::constant(Value(false));
      if (word == "null") return CtTerm::constant(Value(Null{}));
      return CtTerm::variable(std::move(word));
    }
    throw ParseError("unexpected character '" + std::string(1, c) +
                     "' at offset " + std::to_string(pos_));
  }

  bool peek_keyword(const std::string& kw) {
    skip_ws();
    if (pos_ + kw.size() > text_.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i)
      if (std::toupper(static_cast<unsigned char>(text_[pos_ + i])) != kw[i])
        return false;
    const std::size_t after = pos_ + kw.size();
    if (after < text_.size() &&
        (std::isalnum(static_cast<unsigned char>(text_[after])) ||
         text_[after] == '_'))
      return false;
    return true;
  }

  void consume_keyword(const std::string& kw) { pos_ += kw.size(); }

  bool match(const std::string& s) {
    if (text_.compare(pos_, s.size(), s) == 0) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "' at offset " +
                       std::to_string(pos_));
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

// A literal for the tautology check: an atom with negation folded into the
// operator. Returns nullopt for nodes that break CNF shape.
struct Literal {
  CtTerm lhs;
  CmpOp op;
  CtTerm rhs;
};

std::optional<Literal> as_literal(const Condition::Node& n) {
  if (const auto* a = std::get_if<Condition::Atom>(&n))
    return Literal{a->lhs, a->op, a->rhs};
  if (const auto* neg = std::get_if<Condition::Not>(&n)) {
    if (const auto* a = std::get_if<Condition::Atom>(neg->inner.get()))
      return Literal{a->lhs, negate(a->op), a->rhs};
  }
  return std::nullopt;
}

bool collect_clause(const Condition::Node& n, std::vector<Literal>& out) {
  if (const auto* d = std::get_if<Condition::Or>(&n))
    return collect_clause(*d->left, out) && collect_clause(*d->right, out);
  if (auto lit = as_literal(n)) {
    out.push_back(std::move(*lit));
    return true;
  }
  return false;
}

bool collect_clauses(const Condition::Node& n,
                     std::vector<std::vector<Literal>>& out) {
  if (const auto* c = std::get_if<Condition::And>(&n))
    return collect_clauses(*c->left, out) && collect_clauses(*c->right, out);
  std::vector<Literal> clause;
  if (!collect_clause(n, clause)) return false;
  out.push_back(std::move(clause));
  return true;
}

bool ground_true(const Literal& l) {
  if (l.lhs.is_var() || l.rhs.is_var()) {
    // A reflexive comparison of a variable with itself holds under every
    // valuation.
    return term_identical(l.lhs, l.rhs) &&
           (l.op == CmpOp::eq || l.op == CmpOp::le || l.op == CmpOp::ge);
  }
  try {
    return eval_cmp(l.lhs.value, l.op, l.rhs.value);
  } catch (const InvalidArgument&) {
    return false;
  }
}

bool complementary(const Literal& a, const Literal& b) {
  if (!term_identical(a.lhs, b.lhs) || !term_identical(a.rhs, b.rhs))
    return false;
  return negate(a.op) == b.op;
}

}  // namespace

Condition parse_condition(const std::string& text) {
  return ConditionParser(text).parse();
}

bool is_cnf_tautology(const Condition& c) {
  if (c.trivially_true()) return true;
  std::vector<std::vector<Literal>> clauses;
  if (!collect_clauses(*c.root(), clauses)) return false;  // not in CNF
  for (const auto& clause : clauses) {
    bool holds = false;
    for (std::size_t i = 0; i < clause.size() && !holds; ++i) {
      if (ground_true(clause[i])) holds = true;
      for (std::size_t j = i + 1; j < clause.size() && !holds; ++j)
        if (complementary(clause[i], clause[j])) holds = true;
    }
    if (!holds) return false;
  }
  return true;
}

}  // namespace uadb
