#ifndef POLYCIRC_SYNTH_HPP
#define POLYCIRC_SYNTH_HPP

#include <cstdint>

#include "polycirc/circuit.hpp"
#include "polycirc/eval.hpp"
#include "polycirc/semiring.hpp"

namespace polycirc {

/// Compiles a complete function table into a circuit computing it:
///
///   y_j = sum over rows s of (prod_i Compare(Const(s_i), x_i)) * Const(f(s)_j)
///
/// The sum is a balanced tree of Adds. Throws IncompleteTable when the table
/// does not belong to `s`, BudgetExceeded past `budget` rows.
Circuit synth_from_table(const Semiring& s, const FunctionTable& t,
                         std::uint64_t budget = kDefaultBudget);

/// delta(a) = (p-1) * a^(p-1) + 1 over Z_p: 1 at zero, 0 elsewhere. Compare-free.
Circuit fermat_delta(std::uint64_t p);

/// Compare-free comparator over Z_p: sum over s of delta(x1 + s) * delta(x2 + s).
/// Throws NotPrime for composite p.
Circuit fermat_compare(std::uint64_t p);

/// 1 -> 1, x |-> Compare(0, x).
Circuit delta_circuit();

/// k -> 1 balanced tree of binary `op` (Add or Mul); k = 0 yields the unit.
Circuit balanced_tree(GenTag op, std::size_t k);

/// m -> k*m: k consecutive copies of the m input wires.
Circuit fanout(std::size_t m, std::size_t k);

}  // namespace polycirc

#endif  // POLYCIRC_SYNTH_HPP
