#ifndef POLYCIRC_JSON_IO_HPP
#define POLYCIRC_JSON_IO_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polycirc/circuit.hpp"
#include "polycirc/dsl.hpp"
#include "polycirc/semiring.hpp"

namespace polycirc {

// Node encoding:
//   {"node":"gen","tag":"Add"}            tags as in GenTag
//   {"node":"gen","tag":"Const","value":2}
//   {"node":"gen","tag":"Extension","name":"g"}
//   {"node":"seq","f":...,"g":...}
//   {"node":"par","f":...,"g":...}
// File: {"semiring": "<id>", "circuits": {name: node, ...}}

nlohmann::ordered_json circuit_to_json(const Circuit& c);

/// `extensions` resolves Extension nodes by name.
Circuit circuit_from_json(const nlohmann::ordered_json& j, const Semiring* s = nullptr,
                          const std::map<std::string, Circuit>& extensions = {});

std::string encode_json(const Circuit& c);
Circuit decode_json(std::string_view bytes, const Semiring* s = nullptr);

struct CircuitFile {
  std::string semiring;
  std::vector<NamedCircuit> circuits;
};

std::string encode_circuit_file(const CircuitFile& file);
/// Constants are range-checked against `s` when given, otherwise against the
/// semiring named in the header.
CircuitFile decode_circuit_file(std::string_view bytes, const Semiring* s = nullptr);

}  // namespace polycirc

#endif  // POLYCIRC_JSON_IO_HPP
