#include "polycirc/semiring.hpp"

#include <charconv>
#include <sstream>

#include "polycirc/error.hpp"

namespace polycirc {

namespace {

// Keeps a + b representable for any two codes.
constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

std::uint64_t parse_modulus(std::string_view spec, std::string_view digits) {
  std::uint64_t n = 0;
  const auto* first = digits.data();
  const auto* last = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(first, last, n);
  if (digits.empty() || ec != std::errc{} || ptr != last) {
    throw Error(ErrorCode::UnknownSemiring, "unknown semiring '" + std::string(spec) + "'");
  }
  if (n < 2 || n > kMaxModulus) {
    throw Error(ErrorCode::BadModulus, "modulus must lie in [2, 2^62], got " + std::string(digits));
  }
  return n;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are sufficient for every n < 2^64.
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Semiring Semiring::make(std::string_view spec) {
  Semiring s;
  if (spec == "nat") {
    s.id_ = "nat";
    s.kind_ = Kind::Nat;
    return s;
  }
  if (spec == "bool") return make("sat:2");

  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::UnknownSemiring, "unknown semiring '" + std::string(spec) + "'");
  }
  const std::string_view family = spec.substr(0, colon);
  const std::string_view digits = spec.substr(colon + 1);
  if (family != "zmod" && family != "zp" && family != "sat") {
    throw Error(ErrorCode::UnknownSemiring, "unknown semiring '" + std::string(spec) + "'");
  }
  const std::uint64_t n = parse_modulus(spec, digits);
  if (family == "zp" && !is_prime(n)) {
    throw Error(ErrorCode::NotPrime, "zp requires a prime modulus, got " + std::to_string(n));
  }
  s.id_ = std::string(family) + ":" + std::to_string(n);
  s.size_ = n;
  s.kind_ = family == "sat" ? Kind::Sat : Kind::ZMod;
  s.has_neg_ = s.kind_ == Kind::ZMod;
  return s;
}

Semiring Semiring::from_tables(std::string id, std::uint64_t size, Element zero, Element one,
                               std::vector<Element> add, std::vector<Element> mul,
                               std::optional<std::vector<Element>> neg) {
  if (size == 0) throw Error(ErrorCode::BadModulus, "table semiring needs a non-empty carrier");
  const auto cells = size * size;
  if (add.size() != cells || mul.size() != cells || (neg && neg->size() != size)) {
    throw Error(ErrorCode::ShapeMismatch, "operation table sizes do not match carrier size");
  }
  auto check = [&](Element e) {
    if (e.code >= size) {
      throw Error(ErrorCode::ConstOutOfRange, "table entry " + std::to_string(e.code) +
                                                  " outside carrier of size " +
                                                  std::to_string(size));
    }
  };
  check(zero);
  check(one);
  for (auto e : add) check(e);
  for (auto e : mul) check(e);
  if (neg) {
    for (auto e : *neg) check(e);
  }

  Semiring s;
  s.id_ = std::move(id);
  s.kind_ = Kind::Table;
  s.size_ = size;
  s.zero_ = zero;
  s.one_ = one;
  s.add_table_ = std::move(add);
  s.mul_table_ = std::move(mul);
  if (neg) {
    s.has_neg_ = true;
    s.neg_table_ = std::move(*neg);
  }
  return s;
}

std::uint64_t Semiring::size() const {
  if (!finite()) throw Error(ErrorCode::InfiniteCarrier, "semiring " + id_ + " has an infinite carrier");
  return size_;
}

Element Semiring::neg(Element a) const {
  if (!has_neg_) {
    throw Error(ErrorCode::UnsupportedGenerator, "semiring " + id_ + " has no negation");
  }
  if (kind_ == Kind::Table) return neg_table_[a.code];
  return Element{a.code == 0 ? 0 : size_ - a.code};
}

Element Semiring::nat_add(Element a, Element b) const {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a.code, b.code, &r)) {
    throw Error(ErrorCode::Overflow,
                "nat overflow in " + std::to_string(a.code) + " + " + std::to_string(b.code));
  }
  return Element{r};
}

Element Semiring::nat_mul(Element a, Element b) const {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a.code, b.code, &r)) {
    throw Error(ErrorCode::Overflow,
                "nat overflow in " + std::to_string(a.code) + " * " + std::to_string(b.code));
  }
  return Element{r};
}

Element Semiring::times(std::uint64_t k, Element a) const {
  switch (kind_) {
    case Kind::ZMod:
      return Element{mulmod(k % size_, a.code, size_)};
    case Kind::Sat: {
      const unsigned __int128 p = static_cast<unsigned __int128>(k) * a.code;
      return Element{p >= size_ - 1 ? size_ - 1 : static_cast<std::uint64_t>(p)};
    }
    case Kind::Nat:
      return nat_mul(Element{k}, a);
    case Kind::Table:
      break;
  }
  // Double-and-add; only associativity of add is assumed.
  Element acc = zero_;
  Element pow = a;
  while (k > 0) {
    if (k & 1) acc = add(acc, pow);
    k >>= 1;
    if (k > 0) pow = add(pow, pow);
  }
  return acc;
}

std::vector<Element> Semiring::elements() const {
  const auto n = size();
  std::vector<Element> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(Element{i});
  return out;
}

bool Semiring::same_structure(const Semiring& other) const {
  if (!finite() || !other.finite()) return kind_ == other.kind_;
  if (size_ != other.size_ || zero_ != other.zero_ || one_ != other.one_) return false;
  for (std::uint64_t a = 0; a < size_; ++a) {
    for (std::uint64_t b = 0; b < size_; ++b) {
      if (add(Element{a}, Element{b}) != other.add(Element{a}, Element{b})) return false;
      if (mul(Element{a}, Element{b}) != other.mul(Element{a}, Element{b})) return false;
    }
  }
  return true;
}

AxiomReport Semiring::check_axioms() const {
  const auto n = size();
  AxiomReport report;

  auto unary = [&](std::string name, auto&& holds) {
    LawResult r;
    r.name = std::move(name);
    r.cases = n;
    for (std::uint64_t a = 0; a < n; ++a) {
      if (!holds(Element{a})) {
        r.verdict = Verdict::Fail;
        r.counterexample = Tuple{Element{a}};
        break;
      }
    }
    report.add(std::move(r));
  };
  auto binary = [&](std::string name, auto&& holds) {
    LawResult r;
    r.name = std::move(name);
    r.cases = n * n;
    for (std::uint64_t a = 0; a < n && r.verdict == Verdict::Pass; ++a) {
      for (std::uint64_t b = 0; b < n; ++b) {
        if (!holds(Element{a}, Element{b})) {
          r.verdict = Verdict::Fail;
          r.counterexample = Tuple{Element{a}, Element{b}};
          break;
        }
      }
    }
    report.add(std::move(r));
  };
  auto ternary = [&](std::string name, auto&& holds) {
    LawResult r;
    r.name = std::move(name);
    r.cases = n * n * n;
    for (std::uint64_t a = 0; a < n && r.verdict == Verdict::Pass; ++a) {
      for (std::uint64_t b = 0; b < n && r.verdict == Verdict::Pass; ++b) {
        for (std::uint64_t c = 0; c < n; ++c) {
          if (!holds(Element{a}, Element{b}, Element{c})) {
            r.verdict = Verdict::Fail;
            r.counterexample = Tuple{Element{a}, Element{b}, Element{c}};
            break;
          }
        }
      }
    }
    report.add(std::move(r));
  };

  ternary("add_associative", [&](Element a, Element b, Element c) {
    return add(add(a, b), c) == add(a, add(b, c));
  });
  binary("add_commutative", [&](Element a, Element b) { return add(a, b) == add(b, a); });
  unary("add_unit", [&](Element a) { return add(a, zero_) == a; });
  ternary("mul_associative", [&](Element a, Element b, Element c) {
    return mul(mul(a, b), c) == mul(a, mul(b, c));
  });
  binary("mul_commutative", [&](Element a, Element b) { return mul(a, b) == mul(b, a); });
  unary("mul_unit", [&](Element a) { return mul(a, one_) == a; });
  ternary("distributive", [&](Element a, Element b, Element c) {
    return mul(a, add(b, c)) == add(mul(a, b), mul(a, c));
  });
  unary("annihilation", [&](Element a) { return mul(a, zero_) == zero_; });
  if (has_neg_) {
    unary("additive_inverse", [&](Element a) { return add(a, neg(a)) == zero_; });
  }
  return report;
}

}  // namespace polycirc
