#ifndef POLYCIRC_PROGRAM_HPP
#define POLYCIRC_PROGRAM_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "polycirc/circuit.hpp"

namespace polycirc {

/// Straight-line form of a circuit: wiring generators are resolved into wire
/// numbers and every other generator occurrence becomes one instruction.
/// Nothing is shared or dropped, so each occurrence in the term keeps its own
/// instruction. This is what lets reverse() below mirror the structural rule
/// exactly, including for extensions whose rules break the axioms.
///
/// Wires 0..arity-1 are the inputs; outputs may repeat or omit wires.
struct Program {
  struct Instr {
    GenTag tag = GenTag::Add;
    Element value{};
    std::shared_ptr<const ExtensionDef> ext;
    std::vector<std::uint32_t> in;
    std::vector<std::uint32_t> out;
  };

  std::size_t arity = 0;
  std::size_t wires = 0;
  std::vector<Instr> instrs;
  std::vector<std::uint32_t> outputs;

  Shape shape() const noexcept { return {arity, outputs.size()}; }
};

Program lower(const Circuit& c);

/// Reverse derivative of straight-line code, (x, d) -> input change.
/// Replays the program on x, then walks it backwards applying the same
/// generator rules as the circuit-level reverse: a wire read k times gets the
/// sum of its k changes, and an unread wire gets zero. Extensionally equal
/// to lower(reverse(c)), with output size linear in the input size, so it
/// stays usable for the fourth iterate needed by D(D(c)).
Program reverse(const Program& p);

/// (x, dx) -> second projection of R(R(p))((x, 0), dx).
Program forward(const Program& p);

/// ((xa, xb), db) -> forward(p)((xa, xb), (0, db)). Throws SplitOutOfRange.
Program partial(const Program& p, std::size_t a);

/// ((xa, xb), db) -> p(xa, db). Throws SplitOutOfRange.
Program linear_in_rhs(const Program& p, std::size_t a);

}  // namespace polycirc

#endif  // POLYCIRC_PROGRAM_HPP
