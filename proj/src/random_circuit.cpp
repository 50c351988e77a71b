#include "polycirc/random_circuit.hpp"

#include <algorithm>
#include <optional>

namespace polycirc {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

class Builder {
 public:
  Builder(std::mt19937_64& rng, const RandomCircuitOptions& opts) : rng_(rng), opts_(opts) {}

  Circuit build(Shape shape) {
    width_ = shape.arity;
    const std::size_t reserve = opts_.max_width;
    const std::size_t body = opts_.max_size > reserve ? uniform(rng_, 1, opts_.max_size - reserve) : 1;
    for (std::size_t i = 0; i < body; ++i) push_random();
    while (width_ > shape.coarity) shrink();
    while (width_ < shape.coarity) grow();
    if (layers_.empty()) layers_.push_back(id_n(shape.arity));
    return bracket(0, layers_.size());
  }

 private:
  void push(const Circuit& g, std::size_t pos) {
    const std::size_t rest = width_ - pos - g.arity();
    layers_.push_back(tensor_all({id_n(pos), g, id_n(rest)}));
    width_ = width_ - g.arity() + g.coarity();
  }

  void push_at_random(const Circuit& g) { push(g, uniform(rng_, 0, width_ - g.arity())); }

  Circuit random_constant() {
    switch (uniform(rng_, 0, 2)) {
      case 0: return gen::zero();
      case 1: return gen::one();
      default:
        return gen::constant(Element{uniform(rng_, 0, static_cast<std::size_t>(opts_.carrier_size - 1))});
    }
  }

  void push_random() {
    std::vector<Circuit> candidates;
    auto fits = [&](const Circuit& g) {
      return g.arity() <= width_ && width_ - g.arity() + g.coarity() <= opts_.max_width;
    };
    for (const auto& g : {gen::add(), gen::mul(), gen::copy(), gen::discard(), gen::twist(),
                          gen::add(), gen::mul(), gen::copy()}) {
      if (fits(g)) candidates.push_back(g);
    }
    if (width_ < opts_.max_width) {
      candidates.push_back(opts_.carrier_size > 0 ? random_constant() : gen::zero());
    }
    if (opts_.allow_compare && fits(gen::compare())) {
      candidates.push_back(gen::compare());
      candidates.push_back(gen::compare());
    }
    if (opts_.allow_negate && fits(gen::negate())) candidates.push_back(gen::negate());
    if (candidates.empty()) return;
    push_at_random(candidates[uniform(rng_, 0, candidates.size() - 1)]);
  }

  void shrink() {
    if (width_ >= 2 && uniform(rng_, 0, 2) != 0) {
      const Circuit g = uniform(rng_, 0, 2) == 0 ? gen::mul()
                        : opts_.allow_compare && uniform(rng_, 0, 3) == 0 ? gen::compare()
                                                                          : gen::add();
      push_at_random(g);
    } else {
      push_at_random(gen::discard());
    }
  }

  void grow() {
    if (width_ >= 1 && uniform(rng_, 0, 1) == 0) {
      push_at_random(gen::copy());
    } else {
      push_at_random(opts_.carrier_size > 0 ? random_constant() : gen::zero());
    }
  }

  // Random binary bracketing of layers_[lo, hi).
  Circuit bracket(std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return layers_[lo];
    const std::size_t mid = uniform(rng_, lo + 1, hi - 1);
    return compose(bracket(lo, mid), bracket(mid, hi));
  }

  std::mt19937_64& rng_;
  const RandomCircuitOptions& opts_;
  std::size_t width_ = 0;
  std::vector<Circuit> layers_;
};

}  // namespace

Circuit random_circuit(std::mt19937_64& rng, const RandomCircuitOptions& opts, Shape shape) {
  Builder b(rng, opts);
  return b.build(shape);
}

Circuit random_circuit(std::mt19937_64& rng, const RandomCircuitOptions& opts) {
  const std::size_t m = uniform(rng, opts.min_arity, opts.max_arity);
  const std::size_t n = uniform(rng, opts.min_coarity, opts.max_coarity);
  return random_circuit(rng, opts, Shape{m, n});
}

std::size_t node_count(const Circuit& c) {
  if (c.kind() == Circuit::Kind::Gen) return c.generator().tag() == GenTag::Identity ? 0 : 1;
  return node_count(c.first()) + node_count(c.second());
}

}  // namespace polycirc
