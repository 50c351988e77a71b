#include "polycirc/circuit.hpp"

#include <optional>
#include <utility>

#include "polycirc/error.hpp"

namespace polycirc {

std::string to_string(Shape s) {
  return std::to_string(s.arity) + "->" + std::to_string(s.coarity);
}

std::string_view tag_name(GenTag tag) {
  switch (tag) {
    case GenTag::Add: return "Add";
    case GenTag::Zero: return "Zero";
    case GenTag::Mul: return "Mul";
    case GenTag::One: return "One";
    case GenTag::Copy: return "Copy";
    case GenTag::Discard: return "Discard";
    case GenTag::Identity: return "Identity";
    case GenTag::Twist: return "Twist";
    case GenTag::Const: return "Const";
    case GenTag::Compare: return "Compare";
    case GenTag::Negate: return "Negate";
    case GenTag::Extension: return "Extension";
  }
  return "?";
}

Generator::Generator(GenTag tag, Element value) : tag_(tag) {
  if (tag == GenTag::Extension) {
    throw Error(ErrorCode::UnsupportedGenerator, "extension generators need a definition");
  }
  if (tag == GenTag::Const) value_ = value;
}

Generator::Generator(std::shared_ptr<const ExtensionDef> ext)
    : tag_(GenTag::Extension), ext_(std::move(ext)) {
  if (!ext_) throw Error(ErrorCode::UnsupportedGenerator, "null extension definition");
}

Shape Generator::shape() const noexcept {
  switch (tag_) {
    case GenTag::Add:
    case GenTag::Mul:
    case GenTag::Compare:
      return {2, 1};
    case GenTag::Zero:
    case GenTag::One:
    case GenTag::Const:
      return {0, 1};
    case GenTag::Copy:
      return {1, 2};
    case GenTag::Discard:
      return {1, 0};
    case GenTag::Identity:
    case GenTag::Negate:
      return {1, 1};
    case GenTag::Twist:
      return {2, 2};
    case GenTag::Extension:
      return ext_->shape;
  }
  return {};
}

struct Circuit::Node {
  Kind kind;
  Shape shape;
  std::uint64_t size;
  bool has_compare;
  bool has_negate;
  bool has_extension;
  std::optional<Generator> gen;
  std::optional<Circuit> f;
  std::optional<Circuit> g;
};

Circuit::Circuit(Generator g) {
  const GenTag tag = g.tag();
  const Shape s = g.shape();
  node_ = std::make_shared<const Node>(Node{
      .kind = Kind::Gen,
      .shape = s,
      .size = 1,
      .has_compare = tag == GenTag::Compare,
      .has_negate = tag == GenTag::Negate,
      .has_extension = tag == GenTag::Extension,
      .gen = std::move(g),
      .f = std::nullopt,
      .g = std::nullopt,
  });
}

Circuit::Kind Circuit::kind() const noexcept { return node_->kind; }
Shape Circuit::shape() const noexcept { return node_->shape; }
std::uint64_t Circuit::size() const noexcept { return node_->size; }
bool Circuit::uses_compare() const noexcept { return node_->has_compare; }
bool Circuit::uses_negate() const noexcept { return node_->has_negate; }
bool Circuit::uses_extension() const noexcept { return node_->has_extension; }

const Generator& Circuit::generator() const {
  if (node_->kind != Kind::Gen) throw Error(ErrorCode::InvalidFormat, "circuit is not a generator");
  return *node_->gen;
}

const Circuit& Circuit::first() const {
  if (node_->kind == Kind::Gen) throw Error(ErrorCode::InvalidFormat, "generator has no children");
  return *node_->f;
}

const Circuit& Circuit::second() const {
  if (node_->kind == Kind::Gen) throw Error(ErrorCode::InvalidFormat, "generator has no children");
  return *node_->g;
}

bool operator==(const Circuit& a, const Circuit& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.shape != y.shape || x.size != y.size) return false;
  if (x.kind == Circuit::Kind::Gen) return *x.gen == *y.gen;
  return *x.f == *y.f && *x.g == *y.g;
}

Circuit compose(const Circuit& f, const Circuit& g) {
  if (f.coarity() != g.arity()) {
    throw Error(ErrorCode::ShapeMismatch, "cannot compose " + to_string(f.shape()) + " with " +
                                              to_string(g.shape()) + ": " +
                                              std::to_string(f.coarity()) +
                                              " != " + std::to_string(g.arity()));
  }
  const auto& a = *f.node_;
  const auto& b = *g.node_;
  return Circuit(std::make_shared<const Circuit::Node>(Circuit::Node{
      .kind = Circuit::Kind::Seq,
      .shape = {a.shape.arity, b.shape.coarity},
      .size = a.size + b.size,
      .has_compare = a.has_compare || b.has_compare,
      .has_negate = a.has_negate || b.has_negate,
      .has_extension = a.has_extension || b.has_extension,
      .gen = std::nullopt,
      .f = f,
      .g = g,
  }));
}

Circuit tensor(const Circuit& f, const Circuit& g) {
  const auto& a = *f.node_;
  const auto& b = *g.node_;
  return Circuit(std::make_shared<const Circuit::Node>(Circuit::Node{
      .kind = Circuit::Kind::Par,
      .shape = {a.shape.arity + b.shape.arity, a.shape.coarity + b.shape.coarity},
      .size = a.size + b.size,
      .has_compare = a.has_compare || b.has_compare,
      .has_negate = a.has_negate || b.has_negate,
      .has_extension = a.has_extension || b.has_extension,
      .gen = std::nullopt,
      .f = f,
      .g = g,
  }));
}

namespace gen {

Circuit add() { return Circuit(Generator(GenTag::Add)); }
Circuit zero() { return Circuit(Generator(GenTag::Zero)); }
Circuit mul() { return Circuit(Generator(GenTag::Mul)); }
Circuit one() { return Circuit(Generator(GenTag::One)); }
Circuit copy() { return Circuit(Generator(GenTag::Copy)); }
Circuit discard() { return Circuit(Generator(GenTag::Discard)); }
Circuit id() { return Circuit(Generator(GenTag::Identity)); }
Circuit twist() { return Circuit(Generator(GenTag::Twist)); }
Circuit constant(Element value) { return Circuit(Generator(GenTag::Const, value)); }
Circuit compare() { return Circuit(Generator(GenTag::Compare)); }
Circuit negate() { return Circuit(Generator(GenTag::Negate)); }
Circuit extension(std::shared_ptr<const ExtensionDef> def) {
  return Circuit(Generator(std::move(def)));
}

}  // namespace gen

Circuit empty_circuit() { return compose(gen::zero(), gen::discard()); }

Circuit tensor_all(const std::vector<Circuit>& parts) {
  std::optional<Circuit> acc;
  for (const auto& p : parts) {
    if (p.arity() == 0 && p.coarity() == 0) continue;
    acc = acc ? tensor(*acc, p) : p;
  }
  return acc ? *acc : empty_circuit();
}

Circuit compose_all(const std::vector<Circuit>& stages) {
  if (stages.empty()) throw Error(ErrorCode::ShapeMismatch, "compose_all needs at least one stage");
  Circuit acc = stages.front();
  for (std::size_t i = 1; i < stages.size(); ++i) acc = compose(acc, stages[i]);
  return acc;
}

namespace {

Circuit repeat(const Circuit& c, std::size_t n) {
  return tensor_all(std::vector<Circuit>(n, c));
}

// Applies `source` (output i carries input source[i]) after c, unless it is
// the identity permutation.
Circuit then_permute(const Circuit& c, const std::vector<std::size_t>& source) {
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (source[i] != i) return compose(c, permutation(source));
  }
  return c;
}

}  // namespace

Circuit id_n(std::size_t n) { return repeat(gen::id(), n); }
Circuit zero_n(std::size_t n) { return repeat(gen::zero(), n); }
Circuit discard_n(std::size_t n) { return repeat(gen::discard(), n); }

Circuit copy_n(std::size_t n) {
  // (x1,x1,x2,x2,...) -> (x1..xn, x1..xn)
  std::vector<std::size_t> source(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    source[i] = 2 * i;
    source[n + i] = 2 * i + 1;
  }
  return then_permute(repeat(gen::copy(), n), source);
}

Circuit add_n(std::size_t n) {
  // (x1..xn, y1..yn) -> (x1,y1,x2,y2,...)
  std::vector<std::size_t> source(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    source[2 * i] = i;
    source[2 * i + 1] = n + i;
  }
  const Circuit adders = repeat(gen::add(), n);
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (source[i] != i) return compose(permutation(source), adders);
  }
  return adders;
}

Circuit swap_block(std::size_t m, std::size_t n) {
  std::vector<std::size_t> source;
  source.reserve(m + n);
  for (std::size_t i = 0; i < n; ++i) source.push_back(m + i);
  for (std::size_t i = 0; i < m; ++i) source.push_back(i);
  return permutation(source);
}

Circuit proj_first(std::size_t m, std::size_t n) { return tensor_all({id_n(m), discard_n(n)}); }
Circuit proj_second(std::size_t m, std::size_t n) { return tensor_all({discard_n(m), id_n(n)}); }

Circuit const_tuple(const Tuple& values) {
  std::vector<Circuit> parts;
  parts.reserve(values.size());
  for (auto v : values) parts.push_back(gen::constant(v));
  return tensor_all(parts);
}

Circuit permutation(const std::vector<std::size_t>& source) {
  const std::size_t n = source.size();
  std::vector<std::size_t> target(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (source[i] >= n || target[source[i]] != n) {
      throw Error(ErrorCode::ShapeMismatch, "permutation source is not a bijection");
    }
    target[source[i]] = i;
  }
  // Bubble sort the wires by their destination; each adjacent exchange is one
  // layer id_j * twist * id_rest.
  std::vector<std::size_t> arrangement(n);
  for (std::size_t i = 0; i < n; ++i) arrangement[i] = i;
  std::vector<Circuit> layers;
  for (std::size_t pass = 0; pass + 1 < n; ++pass) {
    bool swapped = false;
    for (std::size_t j = 0; j + 1 < n - pass; ++j) {
      if (target[arrangement[j]] > target[arrangement[j + 1]]) {
        std::swap(arrangement[j], arrangement[j + 1]);
        layers.push_back(tensor_all({id_n(j), gen::twist(), id_n(n - j - 2)}));
        swapped = true;
      }
    }
    if (!swapped) break;
  }
  if (layers.empty()) return id_n(n);
  return compose_all(layers);
}

}  // namespace polycirc
