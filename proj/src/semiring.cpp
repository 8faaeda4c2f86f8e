#include "uadb/semiring.hpp"

#include <algorithm>
#include <charconv>

#include "uadb/errors.hpp"

namespace uadb {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw OverflowError("natural addition overflows 64 bits");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw OverflowError("natural multiplication overflows 64 bits");
  return r;
}

std::uint64_t checked_sub(std::uint64_t a, std::uint64_t b) {
  if (b > a) throw InvariantViolation("natural subtraction went negative");
  return a - b;
}

Element Element::vector(Vector components) {
  Element e;
  e.repr_ = std::make_shared<const Vector>(std::move(components));
  return e;
}

Element Element::pair(Element d, Element c) {
  Element e;
  e.repr_ = std::make_shared<const PairElement>(
      PairElement{std::move(d), std::move(c)});
  return e;
}

bool Element::as_bool() const {
  if (!is_bool()) throw InvalidArgument("element is not a boolean");
  return std::get<bool>(repr_);
}

std::uint64_t Element::as_nat() const {
  if (!is_nat()) throw InvalidArgument("element is not a natural");
  return std::get<std::uint64_t>(repr_);
}

AccessLevel Element::as_access() const {
  if (!is_access()) throw InvalidArgument("element is not an access level");
  return std::get<AccessLevel>(repr_);
}

const Element::Vector& Element::as_vector() const {
  if (!is_vector()) throw InvalidArgument("element is not a vector");
  return *std::get<std::shared_ptr<const Vector>>(repr_);
}

const Element& Element::pair_d() const {
  if (!is_pair()) throw InvalidArgument("element is not a pair");
  return std::get<std::shared_ptr<const PairElement>>(repr_)->d;
}

const Element& Element::pair_c() const {
  if (!is_pair()) throw InvalidArgument("element is not a pair");
  return std::get<std::shared_ptr<const PairElement>>(repr_)->c;
}

bool operator==(const Element& a, const Element& b) {
  if (a.repr_.index() != b.repr_.index()) return false;
  switch (a.repr_.index()) {
    case 0:
      return a.as_bool() == b.as_bool();
    case 1:
      return a.as_nat() == b.as_nat();
    case 2:
      return a.as_access() == b.as_access();
    case 3:
      return a.as_vector() == b.as_vector();
    default:
      return a.pair_d() == b.pair_d() && a.pair_c() == b.pair_c();
  }
}

Semiring Semiring::boolean() {
  return Semiring(SemiringKind::boolean, nullptr, 0);
}

Semiring Semiring::natural() {
  return Semiring(SemiringKind::natural, nullptr, 0);
}

Semiring Semiring::access() {
  return Semiring(SemiringKind::access, nullptr, 0);
}

Semiring Semiring::vector_of(const Semiring& base, std::size_t width) {
  if (width == 0) throw InvalidArgument("world vector width must be >= 1");
  return Semiring(SemiringKind::vector,
                  std::make_shared<const Semiring>(base), width);
}

Semiring Semiring::pair_of(const Semiring& base) {
  return Semiring(SemiringKind::pair, std::make_shared<const Semiring>(base),
                  0);
}

const Semiring& Semiring::base() const {
  if (!base_) throw InvalidArgument("semiring has no base");
  return *base_;
}

Element Semiring::zero() const {
  switch (kind_) {
    case SemiringKind::boolean:
      return Element(false);
    case SemiringKind::natural:
      return Element(std::uint64_t{0});
    case SemiringKind::access:
      return Element(AccessLevel::none);
    case SemiringKind::vector:
      return Element::vector(Element::Vector(width_, base_->zero()));
    case SemiringKind::pair:
      return Element::pair(base_->zero(), base_->zero());
  }
  throw InvalidArgument("unknown semiring kind");
}

Element Semiring::one() const {
  switch (kind_) {
    case SemiringKind::boolean:
      return Element(true);
    case SemiringKind::natural:
      return Element(std::uint64_t{1});
    case SemiringKind::access:
      return Element(AccessLevel::public_);
    case SemiringKind::vector:
      return Element::vector(Element::Vector(width_, base_->one()));
    case SemiringKind::pair:
      return Element::pair(base_->one(), base_->one());
  }
  throw InvalidArgument("unknown semiring kind");
}

void Semiring::require(const Element& e) const {
  if (!contains(e))
    throw InvalidArgument("element does not belong to semiring " + name());
}

bool Semiring::contains(const Element& e) const {
  switch (kind_) {
    case SemiringKind::boolean:
      return e.is_bool();
    case SemiringKind::natural:
      return e.is_nat();
    case SemiringKind::access:
      return e.is_access();
    case SemiringKind::vector: {
      if (!e.is_vector() || e.as_vector().size() != width_) return false;
      for (const Element& k : e.as_vector())
        if (!base_->contains(k)) return false;
      return true;
    }
    case SemiringKind::pair:
      return e.is_pair() && base_->contains(e.pair_d()) &&
             base_->contains(e.pair_c());
  }
  return false;
}

Element Semiring::add(const Element& a, const Element& b) const {
  require(a);
  require(b);
  switch (kind_) {
    case SemiringKind::boolean:
      return Element(a.as_bool() || b.as_bool());
    case SemiringKind::natural:
      return Element(checked_add(a.as_nat(), b.as_nat()));
    case SemiringKind::access:
      return Element(std::max(a.as_access(), b.as_access()));
    case SemiringKind::vector: {
      Element::Vector out(width_);
      for (std::size_t i = 0; i < width_; ++i)
        out[i] = base_->add(a.as_vector()[i], b.as_vector()[i]);
      return Element::vector(std::move(out));
    }
    case SemiringKind::pair:
      return Element::pair(base_->add(a.pair_d(), b.pair_d()),
                           base_->add(a.pair_c(), b.pair_c()));
  }
  throw InvalidArgument("unknown semiring kind");
}

Element Semiring::mul(const Element& a, const Element& b) const {
  require(a);
  require(b);
  switch (kind_) {
    case SemiringKind::boolean:
      return Element(a.as_bool() && b.as_bool());
    case SemiringKind::natural:
      return Element(checked_mul(a.as_nat(), b.as_nat()));
    case SemiringKind::access:
      return Element(std::min(a.as_access(), b.as_access()));
    case SemiringKind::vector: {
      Element::Vector out(width_);
      for (std::size_t i = 0; i < width_; ++i)
        out[i] = base_->mul(a.as_vector()[i], b.as_vector()[i]);
      return Element::vector(std::move(out));
    }
    case SemiringKind::pair:
      return Element::pair(base_->mul(a.pair_d(), b.pair_d()),
                           base_->mul(a.pair_c(), b.pair_c()));
  }
  throw InvalidArgument("unknown semiring kind");
}

bool Semiring::leq(const Element& a, const Element& b) const {
  require(a);
  require(b);
  switch (kind_) {
    case SemiringKind::boolean:
      return !a.as_bool() || b.as_bool();
    case SemiringKind::natural:
      return a.as_nat() <= b.as_nat();
    case SemiringKind::access:
      return a.as_access() <= b.as_access();
    case SemiringKind::vector: {
      for (std::size_t i = 0; i < width_; ++i)
        if (!base_->leq(a.as_vector()[i], b.as_vector()[i])) return false;
      return true;
    }
    case SemiringKind::pair:
      return base_->leq(a.pair_d(), b.pair_d()) &&
             base_->leq(a.pair_c(), b.pair_c());
  }
  return false;
}

Element Semiring::glb(const Element& a, const Element& b) const {
  require(a);
  require(b);
  switch (kind_) {
    case SemiringKind::boolean:
      return Element(a.as_bool() && b.as_bool());
    case SemiringKind::natural:
      return Element(std::min(a.as_nat(), b.as_nat()));
    case SemiringKind::access:
      return Element(std::min(a.as_access(), b.as_access()));
    case SemiringKind::vector: {
      Element::Vector out(width_);
      for (std::size_t i = 0; i < width_; ++i)
        out[i] = base_->glb(a.as_vector()[i], b.as_vector()[i]);
      return Element::vector(std::move(out));
    }
    case SemiringKind::pair:
      return Element::pair(base_->glb(a.pair_d(), b.pair_d()),
                           base_->glb(a.pair_c(), b.pair_c()));
  }
  throw InvalidArgument("unknown semiring kind");
}

Element Semiring::lub(const Element& a, const Element& b) const {
  require(a);
  require(b);
  switch (kind_) {
    case SemiringKind::boolean:
      return Element(a.as_bool() || b.as_bool());
    case SemiringKind::natural:
      return Element(std::max(a.as_nat(), b.as_nat()));
    case SemiringKind::access:
      return Element(std::max(a.as_access(), b.as_access()));
    case SemiringKind::vector: {
      Element::Vector out(width_);
      for (std::size_t i = 0; i < width_; ++i)
        out[i] = base_->lub(a.as_vector()[i], b.as_vector()[i]);
      return Element::vector(std::move(out));
    }
    case SemiringKind::pair:
      return Element::pair(base_->lub(a.pair_d(), b.pair_d()),
                           base_->lub(a.pair_c(), b.pair_c()));
  }
  throw InvalidArgument("unknown semiring kind");
}

bool operator==(const Semiring& a, const Semiring& b) {
  if (a.kind_ != b.kind_ || a.width_ != b.width_) return false;
  if (!a.base_ && !b.base_) return true;
  if (!a.base_ || !b.base_) return false;
  return *a.base_ == *b.base_;
}

std::string Semiring::name() const {
  switch (kind_) {
    case SemiringKind::boolean:
      return "B";
    case SemiringKind::natural:
      return "N";
    case SemiringKind::access:
      return "A";
    case SemiringKind::vector:
      return base_->name() + "^" + std::to_string(width_);
    case SemiringKind::pair:
      return base_->name() + "^2";
  }
  return "?";
}

std::string Semiring::render(const Element& e) const {
  require(e);
  switch (kind_) {
    case SemiringKind::boolean:
      return e.as_bool() ? "T" : "F";
    case SemiringKind::natural:
      return std::to_string(e.as_nat());
    case SemiringKind::access:
      return to_display(e.as_access());
    case SemiringKind::vector: {
      std::string out = "[";
      for (std::size_t i = 0; i < width_; ++i) {
        if (i) out += ",";
        out += base_->render(e.as_vector()[i]);
      }
      return out + "]";
    }
    case SemiringKind::pair:
      return "[" + base_->render(e.pair_d()) + "," +
             base_->render(e.pair_c()) + "]";
  }
  return "?";
}

Element Semiring::parse(const std::string& text) const {
  switch (kind_) {
    case SemiringKind::boolean:
      if (text == "T") return Element(true);
      if (text == "F") return Element(false);
      throw ParseError("boolean element must be T or F, got '" + text + "'");
    case SemiringKind::natural: {
      std::uint64_t n = 0;
      auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
      if (ec != std::errc{} || p != text.data() + text.size())
        throw ParseError("bad natural '" + text + "'");
      return Element(n);
    }
    case SemiringKind::access:
      return Element(access_from_string(text));
    default:
      throw ParseError("textual parsing is defined for B, N, A elements only");
  }
}

bool natural_leq(const Semiring& s, const Element& a, const Element& b) {
  return s.leq(a, b);
}

Element glb_fold(const Semiring& s, std::span<const Element> ks) {
  if (ks.empty())
    throw InvalidArgument("glb of an empty sequence is undefined");
  if (!s.is_lattice())
    throw InvalidArgument("semiring " + s.name() + " has no lattice");
  Element acc = ks[0];
  for (std::size_t i = 1; i < ks.size(); ++i) acc = s.glb(acc, ks[i]);
  return acc;
}

Element lub_fold(const Semiring& s, std::span<const Element> ks) {
  if (ks.empty())
    throw InvalidArgument("lub of an empty sequence is undefined");
  if (!s.is_lattice())
    throw InvalidArgument("semiring " + s.name() + " has no lattice");
  Element acc = ks[0];
  for (std::size_t i = 1; i < ks.size(); ++i) acc = s.lub(acc, ks[i]);
  return acc;
}

std::string to_display(AccessLevel a) {
  switch (a) {
    case AccessLevel::none:
      return "0";
    case AccessLevel::top_secret:
      return "T";
    case AccessLevel::secret:
      return "S";
    case AccessLevel::confidential:
      return "C";
    case AccessLevel::public_:
      return "P";
  }
  return "?";
}

AccessLevel access_from_string(const std::string& s) {
  if (s == "0") return AccessLevel::none;
  if (s == "T") return AccessLevel::top_secret;
  if (s == "S") return AccessLevel::secret;
  if (s == "C") return AccessLevel::confidential;
  if (s == "P") return AccessLevel::public_;
  throw ParseError("bad access level '" + s + "'");
}

}  // namespace uadb
