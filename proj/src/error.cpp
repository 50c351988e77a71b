#include "polycirc/error.hpp"

namespace polycirc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSemiring: return "UnknownSemiring";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::BadModulus: return "BadModulus";
    case ErrorCode::InfiniteCarrier: return "InfiniteCarrier";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::ConstOutOfRange: return "ConstOutOfRange";
    case ErrorCode::UnsupportedGenerator: return "UnsupportedGenerator";
    case ErrorCode::NonPolynomialGenerator: return "NonPolynomialGenerator";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::SplitOutOfRange: return "SplitOutOfRange";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidErrorMap: return "InvalidErrorMap";
    case ErrorCode::InvalidFormat: return "InvalidFormat";
  }
  return "Unknown";
}

}  // namespace polycirc
