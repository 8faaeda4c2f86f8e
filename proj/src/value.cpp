#include "uadb/value.hpp"

#include <cmath>
#include <sstream>

namespace uadb {

namespace {

int type_rank(const Value& v) { return static_cast<int>(v.index()); }

template <typename T>
int cmp(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

}  // namespace

int value_order(const Value& a, const Value& b) {
  if (int r = cmp(type_rank(a), type_rank(b)); r != 0) return r;
  switch (a.index()) {
    case 0:
      return 0;
    case 1:
      return cmp(std::get<bool>(a), std::get<bool>(b));
    case 2:
      return cmp(std::get<std::int64_t>(a), std::get<std::int64_t>(b));
    case 3:
      return cmp(std::get<double>(a), std::get<double>(b));
    default:
      return cmp(std::get<std::string>(a), std::get<std::string>(b));
  }
}

bool value_identical(const Value& a, const Value& b) {
  return value_order(a, b) == 0;
}

bool is_null(const Value& v) { return std::holds_alternative<Null>(v); }

bool is_numeric(const Value& v) {
  return std::holds_alternative<std::int64_t>(v) ||
         std::holds_alternative<double>(v);
}

bool is_string(const Value& v) {
  return std::holds_alternative<std::string>(v);
}

bool is_bool(const Value& v) { return std::holds_alternative<bool>(v); }

double numeric_of(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v))
    return static_cast<double>(*i);
  return std::get<double>(v);
}

bool value_equal(const Value& a, const Value& b) {
  if (is_null(a) || is_null(b)) return is_null(a) && is_null(b);
  if (is_numeric(a) && is_numeric(b)) return numeric_of(a) == numeric_of(b);
  return a.index() == b.index() && value_order(a, b) == 0;
}

std::optional<int> value_compare(const Value& a, const Value& b) {
  if (is_null(a) || is_null(b)) return std::nullopt;
  if (is_numeric(a) && is_numeric(b)) return cmp(numeric_of(a), numeric_of(b));
  if (is_string(a) && is_string(b))
    return cmp(std::get<std::string>(a), std::get<std::string>(b));
  return std::nullopt;
}

std::string to_display(const Value& v) {
  switch (v.index()) {
    case 0:
      return "null";
    case 1:
      return std::get<bool>(v) ? "true" : "false";
    case 2:
      return std::to_string(std::get<std::int64_t>(v));
    case 3: {
      std::ostringstream os;
      os << std::get<double>(v);
      return os.str();
    }
    default:
      return std::get<std::string>(v);
  }
}

bool TupleLess::operator()(const Tuple& a, const Tuple& b) const {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int r = value_order(a[i], b[i]); r != 0) return r < 0;
  }
  return a.size() < b.size();
}

bool tuple_identical(const Tuple& a, const Tuple& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!value_identical(a[i], b[i])) return false;
  return true;
}

std::string to_display(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += to_display(t[i]);
  }
  return out + ")";
}

}  // namespace uadb
