#ifndef POLYCIRC_NETLIST_HPP
#define POLYCIRC_NETLIST_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "polycirc/circuit.hpp"
#include "polycirc/program.hpp"
#include "polycirc/semiring.hpp"

namespace polycirc {

/// A circuit lowered to straight-line code over numbered wires.
///
/// Wiring generators (Identity, Twist, Copy, Discard) disappear during
/// lowering; the remaining operations are hash-consed and operations whose
/// results never reach an output are dropped. Both steps are sound because
/// every generator denotes a pure function, so the netlist computes exactly
/// the function the term denotes.
///
/// Wires 0..arity-1 hold the inputs. Running the netlist needs a scratch
/// buffer of wire_count() elements, which callers own so that concurrent
/// evaluations can each keep their own.
class Netlist {
 public:
  /// Lowers c for evaluation over s. Throws UnsupportedGenerator for Negate
  /// over a non-ring and ConstOutOfRange for constants outside the carrier.
  Netlist(const Semiring& s, const Circuit& c);
  Netlist(const Semiring& s, const Program& p);

  Shape shape() const noexcept { return shape_; }
  std::size_t wire_count() const noexcept { return wire_count_; }
  std::size_t op_count() const noexcept { return ops_.size(); }
  const Semiring& semiring() const noexcept { return semiring_; }

  /// in.size() == arity, out.size() == coarity, scratch.size() >= wire_count().
  void run(std::span<const Element> in, std::span<Element> out, std::span<Element> scratch) const;

  Tuple operator()(const Tuple& in) const;

 private:
  enum class OpCode : std::uint8_t { Add, Mul, Const, Compare, Negate, Extension };
  struct Op {
    OpCode code;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t out = 0;
    Element value{};
    std::uint32_t ext = 0;  // index into ext_calls_
  };
  struct ExtCall {
    const ExtensionDef* def;
    std::vector<std::uint32_t> in;
    std::vector<std::uint32_t> out;
  };
  class Builder;

  Semiring semiring_;
  Shape shape_;
  std::size_t wire_count_ = 0;
  std::vector<Op> ops_;
  std::vector<ExtCall> ext_calls_;
  std::vector<std::uint32_t> outputs_;
  // Keeps extension definitions alive for the raw pointers in ext_calls_.
  std::vector<std::shared_ptr<const ExtensionDef>> ext_owners_;
};

}  // namespace polycirc

#endif  // POLYCIRC_NETLIST_HPP
