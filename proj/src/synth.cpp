#include "polycirc/synth.hpp"

#include "polycirc/error.hpp"

namespace polycirc {

Circuit balanced_tree(GenTag op, std::size_t k) {
  if (k == 0) return op == GenTag::Mul ? gen::one() : gen::zero();
  if (k == 1) return gen::id();
  const std::size_t half = k / 2;
  return compose(tensor(balanced_tree(op, half), balanced_tree(op, k - half)),
                 Circuit(Generator(op)));
}

Circuit fanout(std::size_t m, std::size_t k) {
  if (k == 0) return discard_n(m);
  if (k == 1) return id_n(m);
  const std::size_t half = k / 2;
  return compose(copy_n(m), tensor(fanout(m, half), fanout(m, k - half)));
}

namespace {

// a |-> a^e by repeated squaring.
Circuit power(std::uint64_t e) {
  if (e == 0) return compose(gen::discard(), gen::one());
  if (e == 1) return gen::id();
  if (e % 2 == 0) return compose_all({power(e / 2), gen::copy(), gen::mul()});
  return compose_all({gen::copy(), tensor(power(e - 1), gen::id()), gen::mul()});
}

// x |-> x op c
Circuit with_constant(GenTag op, Element c) {
  return compose(tensor(gen::id(), gen::constant(c)), Circuit(Generator(op)));
}

}  // namespace

Circuit synth_from_table(const Semiring& s, const FunctionTable& t, std::uint64_t budget) {
  if (t.carrier_size() != s.size()) {
    throw Error(ErrorCode::IncompleteTable, "table over a carrier of size " +
                                                std::to_string(t.carrier_size()) +
                                                " does not match " + s.id());
  }
  if (t.rows() > budget) {
    throw Error(ErrorCode::BudgetExceeded, "table has " + std::to_string(t.rows()) +
                                               " rows, budget is " + std::to_string(budget));
  }
  const std::size_t m = t.arity();
  const std::size_t n = t.coarity();
  if (m == 0) return const_tuple(t.output(0));

  // Row selectors: m -> 1, 1 exactly on the row's input tuple.
  std::vector<Circuit> selectors;
  selectors.reserve(t.rows());
  for (std::uint64_t r = 0; r < t.rows(); ++r) {
    const Tuple row = t.input(r);
    std::vector<Circuit> tests;
    tests.reserve(m);
    for (const auto v : row) {
      tests.push_back(compose(tensor(gen::constant(v), gen::id()), gen::compare()));
    }
    selectors.push_back(compose(tensor_all(tests), balanced_tree(GenTag::Mul, m)));
  }

  std::vector<Circuit> outputs;
  outputs.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Circuit> terms;
    terms.reserve(t.rows());
    for (std::uint64_t r = 0; r < t.rows(); ++r) {
      terms.push_back(compose(selectors[r], with_constant(GenTag::Mul, t.at(r, j))));
    }
    outputs.push_back(compose_all({fanout(m, terms.size()), tensor_all(terms),
                                   balanced_tree(GenTag::Add, terms.size())}));
  }
  return compose(fanout(m, n), tensor_all(outputs));
}

Circuit fermat_delta(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  return compose_all({power(p - 1), with_constant(GenTag::Mul, Element{p - 1}),
                      with_constant(GenTag::Add, Element{1})});
}

Circuit fermat_compare(std::uint64_t p) {
  const Circuit delta = fermat_delta(p);
  std::vector<Circuit> terms;
  terms.reserve(p);
  for (std::uint64_t v = 0; v < p; ++v) {
    const Circuit shifted = compose(with_constant(GenTag::Add, Element{v}), delta);
    terms.push_back(compose(tensor(shifted, shifted), gen::mul()));
  }
  return compose_all({fanout(2, p), tensor_all(terms), balanced_tree(GenTag::Add, p)});
}

Circuit delta_circuit() { return compose(tensor(gen::zero(), gen::id()), gen::compare()); }

}  // namespace polycirc
