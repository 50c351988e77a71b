#ifndef POLYCIRC_ELEMENT_HPP
#define POLYCIRC_ELEMENT_HPP

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace polycirc {

/// A carrier value, identified by its canonical natural-number code.
struct Element {
  std::uint64_t code = 0;

  friend constexpr auto operator<=>(Element, Element) = default;
};

inline std::ostream& operator<<(std::ostream& os, Element e) { return os << e.code; }

using Tuple = std::vector<Element>;

Tuple make_tuple(std::initializer_list<std::uint64_t> codes);

/// "1,0,2"
std::string format_tuple(const Tuple& t, char sep = ',');

}  // namespace polycirc

#endif  // POLYCIRC_ELEMENT_HPP
