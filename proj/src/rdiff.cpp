#include "polycirc/rdiff.hpp"

#include <unordered_map>

#include "polycirc/error.hpp"

namespace polycirc {

Circuit reverse_generator(const Circuit& c) {
  const Generator& g = c.generator();
  switch (g.tag()) {
    case GenTag::Identity:
      return proj_second(1, 1);
    case GenTag::Twist:
      return tensor(discard_n(2), gen::twist());
    case GenTag::Copy:
      return tensor(gen::discard(), gen::add());
    case GenTag::Discard:
      return compose(gen::discard(), gen::zero());
    case GenTag::Add:
    case GenTag::Compare:
      return tensor(discard_n(2), gen::copy());
    case GenTag::Zero:
    case GenTag::One:
    case GenTag::Const:
      return gen::discard();
    case GenTag::Mul:
      // (x1, x2, d) -> (x2, x1, d, d) -> (x2, d, x1, d) -> (x2 d, x1 d)
      return compose_all({tensor(gen::twist(), gen::copy()),
                          tensor_all({gen::id(), gen::twist(), gen::id()}),
                          tensor(gen::mul(), gen::mul())});
    case GenTag::Negate:
      return tensor(gen::discard(), gen::negate());
    case GenTag::Extension: {
      const auto& def = *g.extension();
      Circuit r = def.reverse_rule(c);
      const Shape want{def.shape.arity + def.shape.coarity, def.shape.arity};
      if (r.shape() != want) {
        throw Error(ErrorCode::ShapeMismatch, "reverse rule for '" + def.name + "' has shape " +
                                                  to_string(r.shape()) + ", expected " +
                                                  to_string(want));
      }
      return r;
    }
  }
  throw Error(ErrorCode::UnsupportedGenerator, "no reverse rule");
}

namespace {

class Reverser {
 public:
  Circuit operator()(const Circuit& c) {
    if (auto it = memo_.find(c.node_id()); it != memo_.end()) return it->second;
    Circuit r = c.kind() == Circuit::Kind::Gen ? reverse_generator(c)
                : c.kind() == Circuit::Kind::Seq ? reverse_seq(c.first(), c.second())
                                                 : reverse_par(c.first(), c.second());
    memo_.emplace(c.node_id(), r);
    return r;
  }

 private:
  Circuit reverse_seq(const Circuit& f, const Circuit& g) {
    const std::size_t m = f.arity();
    const std::size_t n = g.coarity();
    std::vector<Circuit> stages;
    if (m > 0) stages.push_back(tensor_all({copy_n(m), id_n(n)}));  // (x, x, d)
    stages.push_back(tensor_all({id_n(m), f, id_n(n)}));            // (x, f(x), d)
    stages.push_back(tensor_all({id_n(m), (*this)(g)}));            // (x, R[g](f(x), d))
    stages.push_back((*this)(f));
    return compose_all(stages);
  }

  Circuit reverse_par(const Circuit& f, const Circuit& g) {
    const std::size_t m2 = g.arity();
    const std::size_t n1 = f.coarity();
    const Circuit both = tensor_all({(*this)(f), (*this)(g)});
    if (m2 == 0 || n1 == 0) return both;
    // (x1, x2, d1, d2) -> (x1, d1, x2, d2)
    return compose(tensor_all({id_n(f.arity()), swap_block(m2, n1), id_n(g.coarity())}), both);
  }

  // Memoised by node so shared subterms are differentiated once.
  std::unordered_map<const void*, Circuit> memo_;
};

}  // namespace

Circuit reverse(const Circuit& c) {
  Reverser r;
  return r(c);
}

Circuit forward(const Circuit& c) {
  const std::size_t m = c.arity();
  const std::size_t n = c.coarity();
  // (x, dx) -> (x, 0, dx) -> R[R[c]] -> (_, J dx) -> J dx
  return compose_all({tensor_all({id_n(m), zero_n(n), id_n(m)}), reverse(reverse(c)),
                      proj_second(m, n)});
}

Circuit partial(const Circuit& c, std::size_t a) {
  if (a > c.arity()) {
    throw Error(ErrorCode::SplitOutOfRange, "split " + std::to_string(a) +
                                                " exceeds arity " + std::to_string(c.arity()));
  }
  const std::size_t b = c.arity() - a;
  return compose(tensor_all({id_n(a + b), zero_n(a), id_n(b)}), forward(c));
}

Circuit linear_rhs(const Circuit& c) { return compose(proj_second(c.arity(), c.arity()), c); }

Circuit linear_in_rhs(const Circuit& c, std::size_t a) {
  if (a > c.arity()) {
    throw Error(ErrorCode::SplitOutOfRange, "split " + std::to_string(a) +
                                                " exceeds arity " + std::to_string(c.arity()));
  }
  const std::size_t b = c.arity() - a;
  return compose(tensor_all({id_n(a), discard_n(b), id_n(b)}), c);
}

LinearityResult is_linear(const Semiring& s, const Circuit& c, const EvalOptions& opts) {
  auto eq = extensionally_equal(s, forward(c), linear_rhs(c), opts);
  return {eq.equal, eq.counterexample};
}

LinearityResult is_linear_in(const Semiring& s, const Circuit& c, std::size_t a,
                             const EvalOptions& opts) {
  auto eq = extensionally_equal(s, partial(c, a), linear_in_rhs(c, a), opts);
  return {eq.equal, eq.counterexample};
}

}  // namespace polycirc
