#ifndef POLYCIRC_SEMIRING_HPP
#define POLYCIRC_SEMIRING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polycirc/element.hpp"
#include "polycirc/report.hpp"

namespace polycirc {

/// A commutative semiring over canonical element codes.
///
/// Shipped instances:
///   zmod:n   integers modulo n (a ring, so negation is available)
///   zp:p     zmod:p restricted to prime p
///   sat:n    {0..n-1} with add/mul truncated to min(n-1, .)
///   bool     sat:2 (OR/AND)
///   nat      machine naturals; overflow raises ErrorCode::Overflow
///
/// A semiring may also be built from explicit operation tables, which is how
/// the axiom checker is exercised against structures that are not semirings.
/// Values are immutable after construction.
class Semiring {
 public:
  enum class Kind { ZMod, Sat, Nat, Table };

  /// Parses `zmod:<n> | zp:<p> | sat:<n> | nat | bool`.
  static Semiring make(std::string_view spec);

  /// Builds a finite structure from row-major k*k operation tables. No laws
  /// are checked; use check_axioms() for that.
  static Semiring from_tables(std::string id, std::uint64_t size, Element zero, Element one,
                              std::vector<Element> add, std::vector<Element> mul,
                              std::optional<std::vector<Element>> neg = std::nullopt);

  const std::string& id() const noexcept { return id_; }
  Kind kind() const noexcept { return kind_; }
  bool finite() const noexcept { return kind_ != Kind::Nat; }
  /// Carrier size; throws InfiniteCarrier for nat.
  std::uint64_t size() const;

  Element zero() const noexcept { return zero_; }
  Element one() const noexcept { return one_; }

  bool contains(Element a) const noexcept { return kind_ == Kind::Nat || a.code < size_; }

  Element add(Element a, Element b) const {
    switch (kind_) {
      case Kind::ZMod: {
        const std::uint64_t s = a.code + b.code;  // both < size_ <= 2^63
        return Element{s >= size_ ? s - size_ : s};
      }
      case Kind::Sat: {
        const std::uint64_t s = a.code + b.code;
        return Element{s >= size_ - 1 ? size_ - 1 : s};
      }
      case Kind::Nat:
        return nat_add(a, b);
      case Kind::Table:
        return add_table_[a.code * size_ + b.code];
    }
    return zero_;
  }

  Element mul(Element a, Element b) const {
    switch (kind_) {
      case Kind::ZMod:
        return Element{static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(a.code) * b.code % size_)};
      case Kind::Sat: {
        const unsigned __int128 p = static_cast<unsigned __int128>(a.code) * b.code;
        return Element{p >= size_ - 1 ? size_ - 1 : static_cast<std::uint64_t>(p)};
      }
      case Kind::Nat:
        return nat_mul(a, b);
      case Kind::Table:
        return mul_table_[a.code * size_ + b.code];
    }
    return zero_;
  }

  bool has_neg() const noexcept { return has_neg_; }
  /// Additive inverse; throws UnsupportedGenerator when the structure is not a ring.
  Element neg(Element a) const;

  /// k-fold sum a + a + ... + a (k copies; 0 copies is zero).
  Element times(std::uint64_t k, Element a) const;

  /// Image of the natural number k under 0 -> zero, k+1 -> k + one.
  Element from_natural(std::uint64_t k) const { return times(k, one_); }

  /// All carrier elements in code order. Throws InfiniteCarrier for nat.
  std::vector<Element> elements() const;

  /// Exhaustively checks the commutative-semiring laws (and the inverse law
  /// when negation is present). Throws InfiniteCarrier for nat.
  AxiomReport check_axioms() const;

  /// Two semirings are the same when their operation tables coincide.
  bool same_structure(const Semiring& other) const;

 private:
  Semiring() = default;

  Element nat_add(Element a, Element b) const;
  Element nat_mul(Element a, Element b) const;

  std::string id_;
  Kind kind_ = Kind::Nat;
  std::uint64_t size_ = 0;
  Element zero_{0};
  Element one_{1};
  bool has_neg_ = false;
  std::vector<Element> add_table_;
  std::vector<Element> mul_table_;
  std::vector<Element> neg_table_;
};

/// Deterministic primality test on 64-bit integers.
bool is_prime(std::uint64_t n);

}  // namespace polycirc

#endif  // POLYCIRC_SEMIRING_HPP
