#ifndef UADB_SEMIRING_HPP
#define UADB_SEMIRING_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace uadb {

// Clearance levels of the access-control semiring, totally ordered
// 0 < T < S < C < P. Addition is max, multiplication is min.
enum class AccessLevel : std::uint8_t {
  none = 0,
  top_secret = 1,
  secret = 2,
  confidential = 3,
  public_ = 4,
};

struct PairElement;

// A semiring element: one of the closed set of carriers the library
// supports. Elements are immutable values; vectors and pairs share their
// payload, so copies are cheap.
class Element {
 public:
  using Vector = std::vector<Element>;

  Element() : repr_(false) {}
  explicit Element(bool b) : repr_(b) {}
  explicit Element(std::uint64_t n) : repr_(n) {}
  explicit Element(AccessLevel a) : repr_(a) {}

  static Element vector(Vector components);
  static Element pair(Element d, Element c);

  bool is_bool() const { return repr_.index() == 0; }
  bool is_nat() const { return repr_.index() == 1; }
  bool is_access() const { return repr_.index() == 2; }
  bool is_vector() const { return repr_.index() == 3; }
  bool is_pair() const { return repr_.index() == 4; }

  bool as_bool() const;
  std::uint64_t as_nat() const;
  AccessLevel as_access() const;
  const Vector& as_vector() const;
  const Element& pair_d() const;
  const Element& pair_c() const;

  friend bool operator==(const Element& a, const Element& b);
  friend bool operator!=(const Element& a, const Element& b) {
    return !(a == b);
  }

 private:
  std::variant<bool, std::uint64_t, AccessLevel,
               std::shared_ptr<const Vector>,
               std::shared_ptr<const PairElement>>
      repr_;
};

struct PairElement {
  Element d;
  Element c;
};

enum class SemiringKind { boolean, natural, access, vector, pair };

// A commutative semiring from the closed family {B, N, A, K^W, K^2}, with
// its natural order and lattice operations. All five are l-semirings: the
// natural order forms a lattice, so glb/lub are total.
class Semiring {
 public:
  static Semiring boolean();
  static Semiring natural();
  static Semiring access();
  static Semiring vector_of(const Semiring& base, std::size_t width);
  static Semiring pair_of(const Semiring& base);

  SemiringKind kind() const { return kind_; }
  const Semiring& base() const;
  std::size_t width() const { return width_; }

  Element zero() const;
  Element one() const;
  Element add(const Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;

  // Natural order: a <= b iff some c satisfies a + c = b. Supplied per
  // semiring rather than searched.
  bool leq(const Element& a, const Element& b) const;

  bool is_lattice() const { return true; }
  Element glb(const Element& a, const Element& b) const;
  Element lub(const Element& a, const Element& b) const;

  bool is_zero(const Element& e) const { return e == zero(); }
  // Carrier membership (shape check, recursive for vectors and pairs).
  bool contains(const Element& e) const;

  std::string name() const;
  std::string render(const Element& e) const;
  Element parse(const std::string& text) const;

  friend bool operator==(const Semiring& a, const Semiring& b);
  friend bool operator!=(const Semiring& a, const Semiring& b) {
    return !(a == b);
  }

 private:
  Semiring(SemiringKind kind, std::shared_ptr<const Semiring> base,
           std::size_t width)
      : kind_(kind), base_(std::move(base)), width_(width) {}

  void require(const Element& e) const;

  SemiringKind kind_;
  std::shared_ptr<const Semiring> base_;
  std::size_t width_ = 0;
};

// a <= b in the natural order of s.
bool natural_leq(const Semiring& s, const Element& a, const Element& b);

// Greatest lower bound of a nonempty sequence; fold order is irrelevant.
Element glb_fold(const Semiring& s, std::span<const Element> ks);

// Least upper bound of a nonempty sequence.
Element lub_fold(const Semiring& s, std::span<const Element> ks);

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_sub(std::uint64_t a, std::uint64_t b);

std::string to_display(AccessLevel a);
AccessLevel access_from_string(const std::string& s);

}  // namespace uadb

#endif
