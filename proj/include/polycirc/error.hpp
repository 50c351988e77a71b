#ifndef POLYCIRC_ERROR_HPP
#define POLYCIRC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace polycirc {

/// Machine-readable category of a domain error. Every error raised by the
/// library carries one of these so that callers (and the CLI) can branch on
/// the kind of failure without parsing messages.
enum class ErrorCode {
  UnknownSemiring,
  NotPrime,
  BadModulus,
  InfiniteCarrier,
  ShapeMismatch,
  SyntaxError,
  UnknownName,
  ConstOutOfRange,
  UnsupportedGenerator,
  NonPolynomialGenerator,
  Overflow,
  BudgetExceeded,
  IncompleteTable,
  SplitOutOfRange,
  IndexOutOfRange,
  InvalidErrorMap,
  InvalidFormat,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax errors additionally remember the byte offset they were raised at.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(ErrorCode::SyntaxError,
              "syntax error at offset " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace polycirc

#endif  // POLYCIRC_ERROR_HPP
