#ifndef POLYCIRC_EVAL_HPP
#define POLYCIRC_EVAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polycirc/circuit.hpp"
#include "polycirc/kernels.hpp"
#include "polycirc/semiring.hpp"

namespace polycirc {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 20;

struct EvalOptions {
  /// Maximum number of input tuples a single enumeration may visit.
  std::uint64_t budget = kDefaultBudget;
  Exec exec = Exec::Parallel;
};

/// Evaluates c at x. Compare is always available; Negate only over rings.
Tuple eval(const Semiring& s, const Circuit& c, const Tuple& x);

/// Explicit enumeration of a function S^m -> S^n. Rows are stored in
/// lexicographic order of their inputs, so only outputs are kept.
class FunctionTable {
 public:
  FunctionTable(std::string semiring_id, std::uint64_t carrier_size, Shape shape,
                std::vector<Element> outputs);

  const std::string& semiring_id() const noexcept { return semiring_id_; }
  std::uint64_t carrier_size() const noexcept { return carrier_size_; }
  Shape shape() const noexcept { return shape_; }
  std::size_t arity() const noexcept { return shape_.arity; }
  std::size_t coarity() const noexcept { return shape_.coarity; }
  std::uint64_t rows() const noexcept { return rows_; }

  Tuple input(std::uint64_t row) const;
  Tuple output(std::uint64_t row) const;
  Element at(std::uint64_t row, std::size_t j) const { return outputs_[row * shape_.coarity + j]; }

  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;

 private:
  std::string semiring_id_;
  std::uint64_t carrier_size_;
  Shape shape_;
  std::uint64_t rows_;
  std::vector<Element> outputs_;
};

FunctionTable function_table(const Semiring& s, const Circuit& c, const EvalOptions& opts = {});

struct Counterexample {
  Tuple input;
  Tuple lhs;
  Tuple rhs;
};

struct EqualityResult {
  bool equal = true;
  std::uint64_t cases = 0;
  /// The lexicographically least disagreeing input, when unequal.
  std::optional<Counterexample> counterexample;

  explicit operator bool() const noexcept { return equal; }
};

EqualityResult extensionally_equal(const Semiring& s, const Circuit& c1, const Circuit& c2,
                                   const EvalOptions& opts = {});

/// Number of tuples in S^width; throws InfiniteCarrier / BudgetExceeded.
std::uint64_t enumeration_size(const Semiring& s, std::size_t width, std::uint64_t budget);

}  // namespace polycirc

#endif  // POLYCIRC_EVAL_HPP
