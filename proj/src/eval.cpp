#include "polycirc/eval.hpp"

#include <algorithm>

#include "polycirc/error.hpp"
#include "polycirc/netlist.hpp"

namespace polycirc {

std::optional<std::uint64_t> checked_power(std::uint64_t k, std::size_t width, std::uint64_t limit) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < width; ++i) {
    if (k != 0 && total > limit / k) return std::nullopt;
    total *= k;
  }
  if (total > limit) return std::nullopt;
  return total;
}

std::uint64_t enumeration_size(const Semiring& s, std::size_t width, std::uint64_t budget) {
  const auto k = s.size();
  auto total = checked_power(k, width, budget);
  if (!total) {
    throw Error(ErrorCode::BudgetExceeded, std::to_string(k) + "^" + std::to_string(width) +
                                               " inputs exceed the evaluation budget of " +
                                               std::to_string(budget));
  }
  return *total;
}

Tuple eval(const Semiring& s, const Circuit& c, const Tuple& x) {
  if (x.size() != c.arity()) {
    throw Error(ErrorCode::ShapeMismatch, "circuit " + to_string(c.shape()) + " applied to " +
                                              std::to_string(x.size()) + " inputs");
  }
  return Netlist(s, c)(x);
}

FunctionTable::FunctionTable(std::string semiring_id, std::uint64_t carrier_size, Shape shape,
                             std::vector<Element> outputs)
    : semiring_id_(std::move(semiring_id)),
      carrier_size_(carrier_size),
      shape_(shape),
      outputs_(std::move(outputs)) {
  auto rows = checked_power(carrier_size, shape.arity, std::uint64_t{1} << 40);
  if (!rows || outputs_.size() != *rows * shape.coarity) {
    throw Error(ErrorCode::IncompleteTable, "function table has the wrong number of entries");
  }
  rows_ = *rows;
}

Tuple FunctionTable::input(std::uint64_t row) const {
  Tuple t(shape_.arity);
  decode_index(row, carrier_size_, t);
  return t;
}

Tuple FunctionTable::output(std::uint64_t row) const {
  const auto begin = outputs_.begin() + static_cast<std::ptrdiff_t>(row * shape_.coarity);
  return Tuple(begin, begin + static_cast<std::ptrdiff_t>(shape_.coarity));
}

FunctionTable function_table(const Semiring& s, const Circuit& c, const EvalOptions& opts) {
  const auto k = s.size();
  const auto rows = enumeration_size(s, c.arity(), opts.budget);
  const Netlist net(s, c);
  const std::size_t m = c.arity();
  const std::size_t n = c.coarity();
  std::vector<Element> outputs(rows * n);

  struct State {
    Tuple in;
    std::vector<Element> scratch;
  };
  for_each_index(
      rows, opts.exec,
      [&] { return State{Tuple(m), std::vector<Element>(std::max<std::size_t>(net.wire_count(), 1))}; },
      [&](State& st, std::uint64_t row) {
        decode_index(row, k, st.in);
        net.run(st.in, std::span<Element>(outputs).subspan(row * n, n), st.scratch);
      });
  return FunctionTable(s.id(), k, c.shape(), std::move(outputs));
}

EqualityResult extensionally_equal(const Semiring& s, const Circuit& c1, const Circuit& c2,
                                   const EvalOptions& opts) {
  if (c1.shape() != c2.shape()) {
    throw Error(ErrorCode::ShapeMismatch, "cannot compare circuits of shapes " +
                                              to_string(c1.shape()) + " and " +
                                              to_string(c2.shape()));
  }
  const auto k = s.size();
  const auto total = enumeration_size(s, c1.arity(), opts.budget);
  const Netlist n1(s, c1);
  const Netlist n2(s, c2);
  const std::size_t m = c1.arity();
  const std::size_t n = c1.coarity();

  struct State {
    Tuple in, a, b;
    std::vector<Element> scratch;
  };
  auto make_state = [&] {
    return State{Tuple(m), Tuple(n), Tuple(n),
                 std::vector<Element>(std::max<std::size_t>({n1.wire_count(), n2.wire_count(), 1}))};
  };
  auto fails = [&](State& st, std::uint64_t i) {
    decode_index(i, k, st.in);
    n1.run(st.in, st.a, st.scratch);
    n2.run(st.in, st.b, st.scratch);
    return st.a != st.b;
  };

  EqualityResult result;
  result.cases = total;
  if (auto bad = first_failure(total, opts.exec, make_state, fails)) {
    State st = make_state();
    fails(st, *bad);
    result.equal = false;
    result.counterexample = Counterexample{st.in, st.a, st.b};
  }
  return result;
}

}  // namespace polycirc
