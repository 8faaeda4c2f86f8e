#include "uadb/relation.hpp"

#include <set>

#include "uadb/errors.hpp"

namespace uadb {

std::optional<std::size_t> Schema::index_of(const std::string& attr) const {
  for (std::size_t i = 0; i < attributes.size(); ++i)
    if (attributes[i] == attr) return i;
  return std::nullopt;
}

void Schema::validate() const {
  if (attributes.empty())
    throw InvalidArgument("schema '" + name + "' must have arity >= 1");
  std::set<std::string> seen;
  for (const auto& a : attributes)
    if (!seen.insert(a).second)
      throw InvalidArgument("schema '" + name + "' repeats attribute '" + a +
                            "'");
}

KRelation::KRelation(Schema schema, Semiring semiring)
    : schema_(std::move(schema)), semiring_(std::move(semiring)) {}

void KRelation::check(const Tuple& t, const Element& k) const {
  if (t.size() != schema_.arity())
    throw InvalidArgument("tuple arity " + std::to_string(t.size()) +
                          " does not match schema '" + schema_.name + "' (" +
                          std::to_string(schema_.arity()) + ")");
  if (!semiring_.contains(k))
    throw InvalidArgument("annotation is not an element of " +
                          semiring_.name());
}

void KRelation::set(Tuple t, Element k) {
  check(t, k);
  if (semiring_.is_zero(k)) {
    rows_.erase(t);
  } else {
    rows_.insert_or_assign(std::move(t), std::move(k));
  }
}

void KRelation::add(Tuple t, Element k) {
  check(t, k);
  auto it = rows_.find(t);
  if (it == rows_.end()) {
    if (!semiring_.is_zero(k)) rows_.emplace(std::move(t), std::move(k));
    return;
  }
  Element sum = semiring_.add(it->second, k);
  if (semiring_.is_zero(sum)) {
    rows_.erase(it);
  } else {
    it->second = std::move(sum);
  }
}

Element KRelation::annotation(const Tuple& t) const {
  auto it = rows_.find(t);
  return it == rows_.end() ? semiring_.zero() : it->second;
}

bool KRelation::contains(const Tuple& t) const {
  return rows_.find(t) != rows_.end();
}

bool operator==(const KRelation& a, const KRelation& b) {
  if (a.schema_ != b.schema_ || a.semiring_ != b.semiring_) return false;
  if (a.rows_.size() != b.rows_.size()) return false;
  auto ia = a.rows_.begin();
  auto ib = b.rows_.begin();
  for (; ia != a.rows_.end(); ++ia, ++ib) {
    if (!tuple_identical(ia->first, ib->first) || ia->second != ib->second)
      return false;
  }
  return true;
}

}  // namespace uadb
