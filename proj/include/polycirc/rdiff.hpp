#ifndef POLYCIRC_RDIFF_HPP
#define POLYCIRC_RDIFF_HPP

#include <optional>

#include "polycirc/circuit.hpp"
#include "polycirc/eval.hpp"
#include "polycirc/semiring.hpp"

namespace polycirc {

/// Reverse derivative R[c] : m+n -> m of c : m -> n. The first m inputs are
/// the base point x, the last n the output change; the result is the input
/// change. Built by structural recursion:
///
///   R[f ; g](x, d)      = R[f](x, R[g](f(x), d))
///   R[f * g](x1,x2,d1,d2) = (R[f](x1,d1), R[g](x2,d2))
///
/// with fixed rules per generator. Compare uses the rule for Add, i.e. the
/// straight-through estimator. Extension generators use their own rule.
/// The result is a circuit, so it can be reversed again.
Circuit reverse(const Circuit& c);

/// The fixed rule for a single generator c : m -> n, shape m+n -> m.
/// Throws ShapeMismatch when an extension's rule has the wrong shape.
Circuit reverse_generator(const Circuit& c);

/// Forward derivative D[c] : 2m -> n, (x, dx) |-> J(x) dx, obtained from the
/// second reverse derivative at change 0.
Circuit forward(const Circuit& c);

/// Partial derivative in the trailing block: for c : a+b -> n, returns
/// D_B[c] : (a+b)+b -> n, ((xa, xb), db) |-> D[c]((xa, xb), (0, db)).
/// Throws SplitOutOfRange when a > arity(c).
Circuit partial(const Circuit& c, std::size_t a);

struct LinearityResult {
  bool linear = true;
  std::optional<Counterexample> counterexample;

  explicit operator bool() const noexcept { return linear; }
};

/// D[c] agrees extensionally with (x, dx) |-> c(dx).
LinearityResult is_linear(const Semiring& s, const Circuit& c, const EvalOptions& opts = {});

/// D_B[c] agrees extensionally with ((xa, xb), db) |-> c(xa, db).
LinearityResult is_linear_in(const Semiring& s, const Circuit& c, std::size_t a,
                             const EvalOptions& opts = {});

/// The right-hand sides the linearity predicates compare against.
Circuit linear_rhs(const Circuit& c);
Circuit linear_in_rhs(const Circuit& c, std::size_t a);

}  // namespace polycirc

#endif  // POLYCIRC_RDIFF_HPP
