#ifndef POLYCIRC_DSL_HPP
#define POLYCIRC_DSL_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "polycirc/circuit.hpp"
#include "polycirc/semiring.hpp"

namespace polycirc {

struct NamedCircuit {
  std::string name;
  Circuit circuit;
};

struct DslOptions {
  /// When set, constants are range-checked against this carrier.
  const Semiring* semiring = nullptr;
  /// Names visible before the first definition (e.g. `self` for extension rules).
  std::map<std::string, Circuit> environment;
};

/// Parses a program of definitions:
///
///   program := def+
///   def     := "let" NAME "=" expr
///   expr    := term (";" term)*       sequential, left to right
///   term    := factor ("*" factor)*   tensor, top to bottom
///   factor  := NAME | GEN | "(" expr ")"
///   GEN     := add | zero | mul | one | copy | discard | id | swap | eq | neg | const(UINT)
///
/// `#` starts a comment that runs to the end of the line. Names may refer to
/// earlier definitions. Shapes are checked while parsing.
std::vector<NamedCircuit> parse_dsl(std::string_view text, const DslOptions& opts = {});

/// Parses a single expression.
Circuit parse_dsl_expr(std::string_view text, const DslOptions& opts = {});

/// Renders an expression that parses back to a structurally equal circuit.
/// Extension generators are rendered by name.
std::string render_dsl(const Circuit& c);

/// One `let name = expr` line per circuit.
std::string render_dsl_program(const std::vector<NamedCircuit>& circuits);

}  // namespace polycirc

#endif  // POLYCIRC_DSL_HPP
