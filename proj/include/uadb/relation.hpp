#ifndef UADB_RELATION_HPP
#define UADB_RELATION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uadb/semiring.hpp"
#include "uadb/value.hpp"

namespace uadb {

struct Schema {
  std::string name;
  std::vector<std::string> attributes;

  std::size_t arity() const { return attributes.size(); }
  std::optional<std::size_t> index_of(const std::string& attr) const;

  // Base relations must have unique attribute names and arity >= 1.
  // Derived schemas (projection with repeats) may relax uniqueness.
  void validate() const;

  friend bool operator==(const Schema& a, const Schema& b) {
    return a.attributes == b.attributes;
  }
};

// A finite annotated relation: tuples mapped to nonzero semiring elements,
// in sorted tuple order. Zero-annotated tuples are never stored.
class KRelation {
 public:
  KRelation(Schema schema, Semiring semiring);

  const Schema& schema() const { return schema_; }
  const Semiring& semiring() const { return semiring_; }

  // Overwrites the annotation of t (erases when zero).
  void set(Tuple t, Element k);
  // Accumulates with semiring addition, then drops zero.
  void add(Tuple t, Element k);

  // Zero for absent tuples.
  Element annotation(const Tuple& t) const;
  bool contains(const Tuple& t) const;

  const std::map<Tuple, Element, TupleLess>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  void rename(std::string name) { schema_.name = std::move(name); }

  friend bool operator==(const KRelation& a, const KRelation& b);

 private:
  void check(const Tuple& t, const Element& k) const;

  Schema schema_;
  Semiring semiring_;
  std::map<Tuple, Element, TupleLess> rows_;
};

using Database = std::map<std::string, KRelation>;

}  // namespace uadb

#endif
