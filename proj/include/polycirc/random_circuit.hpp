#ifndef POLYCIRC_RANDOM_CIRCUIT_HPP
#define POLYCIRC_RANDOM_CIRCUIT_HPP

#include <cstdint>
#include <random>

#include "polycirc/circuit.hpp"

namespace polycirc {

struct RandomCircuitOptions {
  std::size_t min_arity = 1;
  std::size_t max_arity = 3;
  std::size_t min_coarity = 1;
  std::size_t max_coarity = 3;
  /// Upper bound on non-identity generator leaves.
  std::size_t max_size = 20;
  /// Upper bound on the number of wires alive between layers.
  std::size_t max_width = 4;
  /// Carrier size used to draw constants; 0 disables constants.
  std::uint64_t carrier_size = 2;
  bool allow_compare = false;
  bool allow_negate = false;
};

/// Draws a random circuit: a chain of layers id_j * g * id_k with a random
/// bracketing of the compositions. Deterministic for a given engine state.
Circuit random_circuit(std::mt19937_64& rng, const RandomCircuitOptions& opts);

/// As above, with a fixed shape.
Circuit random_circuit(std::mt19937_64& rng, const RandomCircuitOptions& opts, Shape shape);

/// Number of generator leaves other than Identity.
std::size_t node_count(const Circuit& c);

}  // namespace polycirc

#endif  // POLYCIRC_RANDOM_CIRCUIT_HPP
