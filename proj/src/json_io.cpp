#include "polycirc/json_io.hpp"

#include <optional>

#include "polycirc/error.hpp"

namespace polycirc {

using ojson = nlohmann::ordered_json;

namespace {

std::optional<GenTag> tag_from_name(std::string_view name) {
  for (auto t : {GenTag::Add, GenTag::Zero, GenTag::Mul, GenTag::One, GenTag::Copy,
                 GenTag::Discard, GenTag::Identity, GenTag::Twist, GenTag::Const,
                 GenTag::Compare, GenTag::Negate, GenTag::Extension}) {
    if (tag_name(t) == name) return t;
  }
  return std::nullopt;
}

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidFormat, msg); }

const ojson& field(const ojson& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

ojson circuit_to_json(const Circuit& c) {
  ojson j;
  switch (c.kind()) {
    case Circuit::Kind::Gen: {
      const auto& g = c.generator();
      j["node"] = "gen";
      j["tag"] = std::string(tag_name(g.tag()));
      if (g.tag() == GenTag::Const) j["value"] = g.value().code;
      if (g.tag() == GenTag::Extension) j["name"] = g.extension()->name;
      break;
    }
    case Circuit::Kind::Seq:
    case Circuit::Kind::Par:
      j["node"] = c.kind() == Circuit::Kind::Seq ? "seq" : "par";
      j["f"] = circuit_to_json(c.first());
      j["g"] = circuit_to_json(c.second());
      break;
  }
  return j;
}

Circuit circuit_from_json(const ojson& j, const Semiring* s,
                          const std::map<std::string, Circuit>& extensions) {
  const auto& node = field(j, "node");
  if (!node.is_string()) bad("'node' must be a string");
  const auto kind = node.get<std::string>();
  if (kind == "seq") {
    return compose(circuit_from_json(field(j, "f"), s, extensions),
                   circuit_from_json(field(j, "g"), s, extensions));
  }
  if (kind == "par") {
    return tensor(circuit_from_json(field(j, "f"), s, extensions),
                  circuit_from_json(field(j, "g"), s, extensions));
  }
  if (kind != "gen") bad("unknown node kind '" + kind + "'");

  const auto& tag_json = field(j, "tag");
  if (!tag_json.is_string()) bad("'tag' must be a string");
  const auto tag = tag_from_name(tag_json.get<std::string>());
  if (!tag) bad("unknown generator tag '" + tag_json.get<std::string>() + "'");
  if (*tag == GenTag::Const) {
    const auto& v = field(j, "value");
    if (!v.is_number_unsigned()) bad("'value' must be an unsigned integer");
    const Element e{v.get<std::uint64_t>()};
    if (s != nullptr && !s->contains(e)) {
      throw Error(ErrorCode::ConstOutOfRange,
                  "const(" + std::to_string(e.code) + ") outside carrier of " + s->id());
    }
    return gen::constant(e);
  }
  if (*tag == GenTag::Extension) {
    const auto name = field(j, "name").get<std::string>();
    auto it = extensions.find(name);
    if (it == extensions.end()) throw Error(ErrorCode::UnknownName, "unknown extension '" + name + "'");
    return it->second;
  }
  return Circuit(Generator(*tag));
}

std::string encode_json(const Circuit& c) { return circuit_to_json(c).dump(); }

Circuit decode_json(std::string_view bytes, const Semiring* s) {
  ojson j;
  try {
    j = ojson::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  return circuit_from_json(j, s);
}

std::string encode_circuit_file(const CircuitFile& file) {
  ojson j;
  j["semiring"] = file.semiring;
  ojson circuits = ojson::object();
  for (const auto& [name, c] : file.circuits) circuits[name] = circuit_to_json(c);
  j["circuits"] = std::move(circuits);
  return j.dump(2) + "\n";
}

CircuitFile decode_circuit_file(std::string_view bytes, const Semiring* s) {
  ojson j;
  try {
    j = ojson::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  CircuitFile file;
  const auto& id = field(j, "semiring");
  if (!id.is_string()) bad("'semiring' must be a string");
  file.semiring = id.get<std::string>();
  std::optional<Semiring> header;
  if (s == nullptr) {
    header = Semiring::make(file.semiring);
    s = &*header;
  }
  const auto& circuits = field(j, "circuits");
  if (!circuits.is_object()) bad("'circuits' must be an object");
  for (const auto& [name, node] : circuits.items()) {
    file.circuits.push_back({name, circuit_from_json(node, s)});
  }
  return file;
}

}  // namespace polycirc
