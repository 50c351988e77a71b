#ifndef POLYCIRC_POLYNOMIAL_HPP
#define POLYCIRC_POLYNOMIAL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "polycirc/circuit.hpp"
#include "polycirc/semiring.hpp"

namespace polycirc {

/// Exponent vector; exponents are formal and never reduced using identities
/// of the carrier (x^2 stays x^2 over Z_2).
using Monomial = std::vector<std::uint32_t>;

std::uint64_t degree(const Monomial& m);

/// Graded lexicographic order, largest first: higher total degree first, then
/// larger exponent of x0, then of x1, ...
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// A polynomial in `arity` indeterminates with coefficients in a semiring.
/// Zero coefficients are never stored, so the zero polynomial has no terms.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Element, GradedLexGreater>;

  explicit Polynomial(std::size_t arity) : arity_(arity) {}

  static Polynomial constant(const Semiring& s, std::size_t arity, Element c);
  static Polynomial variable(const Semiring& s, std::size_t arity, std::size_t index);

  std::size_t arity() const noexcept { return arity_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Coefficient of m (zero of the semiring if absent is the caller's concern).
  const Element* coefficient(const Monomial& m) const;

  /// Adds c * m into this polynomial.
  void add_term(const Semiring& s, const Monomial& m, Element c);

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::size_t arity_;
  Terms terms_;
};

Polynomial add(const Semiring& s, const Polynomial& p, const Polynomial& q);
Polynomial multiply(const Semiring& s, const Polynomial& p, const Polynomial& q);
Element evaluate(const Semiring& s, const Polynomial& p, const Tuple& x);

/// Formal derivative in x_i: c x^e |-> (e_i copies of c, summed in S) x^(e - 1_i).
/// Throws IndexOutOfRange when i >= arity.
Polynomial formal_partial(const Semiring& s, const Polynomial& p, std::size_t i);

/// A tuple of polynomials sharing one set of indeterminates: a morphism m -> n
/// of the category of polynomial maps.
struct PolyMap {
  std::size_t arity = 0;
  std::vector<Polynomial> polys;

  Shape shape() const noexcept { return {arity, polys.size()}; }
  friend bool operator==(const PolyMap&, const PolyMap&) = default;
};

/// Normal form of a Compare-free circuit. Throws NonPolynomialGenerator for
/// Compare and extension generators, UnsupportedGenerator for Negate over a
/// non-ring.
PolyMap to_poly(const Semiring& s, const Circuit& c);

Tuple evaluate(const Semiring& s, const PolyMap& pm, const Tuple& x);

/// Jacobian-transpose action: entry i is sum_j d_j * (dp_j/dx_i)(x).
Tuple jt_apply(const Semiring& s, const PolyMap& pm, const Tuple& x, const Tuple& d);

/// Jacobian action: entry j is sum_i (dp_j/dx_i)(x) * dx_i.
Tuple jacobian_apply(const Semiring& s, const PolyMap& pm, const Tuple& x, const Tuple& dx);

/// Coefficient-wise equality. Formally different polynomials can still agree
/// as functions over a finite carrier (x^2 and x over Z_2).
bool poly_equal(const PolyMap& a, const PolyMap& b);

/// `y0 = 2·x0^2·x1 + x1 + 1`, one line per output.
std::string render(const PolyMap& pm);
std::string render(const Polynomial& p);

}  // namespace polycirc

#endif  // POLYCIRC_POLYNOMIAL_HPP
