#include "polycirc/element.hpp"

namespace polycirc {

Tuple make_tuple(std::initializer_list<std::uint64_t> codes) {
  Tuple t;
  t.reserve(codes.size());
  for (auto c : codes) t.push_back(Element{c});
  return t;
}

std::string format_tuple(const Tuple& t, char sep) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) out += sep;
    out += std::to_string(t[i].code);
  }
  return out;
}

}  // namespace polycirc
