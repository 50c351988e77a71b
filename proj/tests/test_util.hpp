#ifndef POLYCIRC_TEST_UTIL_HPP
#define POLYCIRC_TEST_UTIL_HPP

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "polycirc/element.hpp"
#include "polycirc/error.hpp"

namespace polycirc::testing {

inline Tuple T(std::initializer_list<std::uint64_t> codes) { return make_tuple(codes); }

// Runs fn and returns the ErrorCode it threw; fails the test if nothing was thrown.
template <class Fn>
ErrorCode error_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvalidFormat;
}

inline const std::vector<std::string>& finite_semirings() {
  static const std::vector<std::string> ids = {"zmod:2", "zmod:3", "zmod:5", "sat:2", "sat:3", "sat:4"};
  return ids;
}

}  // namespace polycirc::testing

#endif  // POLYCIRC_TEST_UTIL_HPP
