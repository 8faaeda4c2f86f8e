#ifndef UADB_VALUE_HPP
#define UADB_VALUE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace uadb {

// The null marker is an ordinary constant: it equals only itself and fails
// every ordering comparison.
struct Null {
  friend bool operator==(Null, Null) { return true; }
};

// A domain constant. Integers and decimals are distinct constants even when
// numerically equal; predicate comparison is numeric across the two.
using Value = std::variant<Null, bool, std::int64_t, double, std::string>;

using Tuple = std::vector<Value>;

// Total order used for deterministic iteration: by type tag, then value.
int value_order(const Value& a, const Value& b);

// Identity used for annotation maps and grouping (type tag + payload).
bool value_identical(const Value& a, const Value& b);

// Predicate equality: null = null holds, numerics compare across int/decimal,
// mismatched families (string vs number) are a type error reported by the
// caller via the nullopt path of value_compare.
bool value_equal(const Value& a, const Value& b);

// Three-way predicate comparison. nullopt means the pair is unordered:
// either a null is involved or the families are incomparable.
std::optional<int> value_compare(const Value& a, const Value& b);

bool is_null(const Value& v);
bool is_numeric(const Value& v);
bool is_string(const Value& v);
bool is_bool(const Value& v);
double numeric_of(const Value& v);

std::string to_display(const Value& v);

struct TupleLess {
  bool operator()(const Tuple& a, const Tuple& b) const;
};

bool tuple_identical(const Tuple& a, const Tuple& b);
std::string to_display(const Tuple& t);

}  // namespace uadb

#endif
