#ifndef POLYCIRC_CIRCUIT_HPP
#define POLYCIRC_CIRCUIT_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polycirc/element.hpp"

namespace polycirc {

struct Shape {
  std::size_t arity = 0;
  std::size_t coarity = 0;

  friend constexpr bool operator==(Shape, Shape) = default;
};

std::string to_string(Shape s);  // "2->1"

enum class GenTag {
  Add,       // 2 -> 1
  Zero,      // 0 -> 1
  Mul,       // 2 -> 1
  One,       // 0 -> 1
  Copy,      // 1 -> 2
  Discard,   // 1 -> 0
  Identity,  // 1 -> 1
  Twist,     // 2 -> 2
  Const,     // 0 -> 1, carries an element
  Compare,   // 2 -> 1, 1 if equal else 0
  Negate,    // 1 -> 1, rings only
  Extension, // user-supplied generator, see ExtensionDef
};

std::string_view tag_name(GenTag tag);

class Circuit;
struct ExtensionDef;

class Generator {
 public:
  explicit Generator(GenTag tag, Element value = {});
  explicit Generator(std::shared_ptr<const ExtensionDef> ext);

  GenTag tag() const noexcept { return tag_; }
  /// Only meaningful for Const.
  Element value() const noexcept { return value_; }
  const std::shared_ptr<const ExtensionDef>& extension() const noexcept { return ext_; }
  Shape shape() const noexcept;

  friend bool operator==(const Generator& a, const Generator& b) {
    return a.tag_ == b.tag_ && a.value_ == b.value_ && a.ext_ == b.ext_;
  }

 private:
  GenTag tag_;
  Element value_{};
  std::shared_ptr<const ExtensionDef> ext_;
};

/// A shape-checked term over generators, sequential composition (Seq, diagram
/// order: first f, then g) and parallel composition (Par, f above g).
///
/// Circuits are immutable and share structure, so copying is cheap and a
/// Circuit may be handed to other threads freely. Equality is structural:
/// two circuits denoting the same function need not compare equal.
class Circuit {
 public:
  enum class Kind { Gen, Seq, Par };

  Circuit(Generator g);  // NOLINT(google-explicit-constructor)

  Kind kind() const noexcept;
  Shape shape() const noexcept;
  std::size_t arity() const noexcept { return shape().arity; }
  std::size_t coarity() const noexcept { return shape().coarity; }

  /// Valid when kind() == Gen.
  const Generator& generator() const;
  /// Valid when kind() is Seq or Par.
  const Circuit& first() const;
  const Circuit& second() const;

  /// Number of generator leaves in the (unshared) term tree.
  std::uint64_t size() const noexcept;
  bool uses_compare() const noexcept;
  bool uses_negate() const noexcept;
  bool uses_extension() const noexcept;

  /// Address of the shared node; stable for the lifetime of any copy.
  const void* node_id() const noexcept { return node_.get(); }

  friend bool operator==(const Circuit& a, const Circuit& b);

  friend Circuit compose(const Circuit& f, const Circuit& g);
  friend Circuit tensor(const Circuit& f, const Circuit& g);

 private:
  struct Node;
  explicit Circuit(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Sequential composition f ; g. Throws ShapeMismatch unless coarity(f) == arity(g).
Circuit compose(const Circuit& f, const Circuit& g);
/// Parallel composition, f on the first wires and g on the rest.
Circuit tensor(const Circuit& f, const Circuit& g);

/// A generator supplied from outside the fixed signature, together with its
/// evaluation semantics and a proposed reverse derivative. The reverse rule
/// receives the generator itself so that the rule may mention it again.
struct ExtensionDef {
  std::string name;
  Shape shape;
  std::function<void(std::span<const Element> in, std::span<Element> out)> semantics;
  std::function<Circuit(const Circuit& self)> reverse_rule;
};

namespace gen {

Circuit add();
Circuit zero();
Circuit mul();
Circuit one();
Circuit copy();
Circuit discard();
Circuit id();
Circuit twist();
Circuit constant(Element value);
Circuit compare();
Circuit negate();
Circuit extension(std::shared_ptr<const ExtensionDef> def);

}  // namespace gen

// Derived constructors. Blocks of width zero are omitted from tensors, so
// e.g. id_n(0) only appears when a 0 -> 0 circuit is genuinely required; it is
// represented by `zero ; discard`.

Circuit empty_circuit();
Circuit id_n(std::size_t n);
/// n -> 2n, (x) |-> (x, x).
Circuit copy_n(std::size_t n);
/// 2n -> n, (x, y) |-> x + y componentwise.
Circuit add_n(std::size_t n);
Circuit zero_n(std::size_t n);
Circuit discard_n(std::size_t n);
/// m+n -> n+m, moves the first m wires after the next n.
Circuit swap_block(std::size_t m, std::size_t n);
/// m+n -> m
Circuit proj_first(std::size_t m, std::size_t n);
/// m+n -> n
Circuit proj_second(std::size_t m, std::size_t n);
/// 0 -> |values|
Circuit const_tuple(const Tuple& values);

/// n -> n wire permutation; output wire i carries input wire source[i].
/// Built from adjacent Twists by bubble sort.
Circuit permutation(const std::vector<std::size_t>& source);

/// Left-nested tensor of all parts, skipping 0 -> 0 parts.
Circuit tensor_all(const std::vector<Circuit>& parts);
/// Left-nested composition of all stages.
Circuit compose_all(const std::vector<Circuit>& stages);

}  // namespace polycirc

#endif  // POLYCIRC_CIRCUIT_HPP
