#ifndef POLYCIRC_CSV_HPP
#define POLYCIRC_CSV_HPP

#include <string>
#include <string_view>

#include "polycirc/eval.hpp"
#include "polycirc/learn.hpp"
#include "polycirc/semiring.hpp"

namespace polycirc {

/// Header x0,...,x{m-1},y0,...,y{n-1}; one row per input in lexicographic order.
std::string table_to_csv(const FunctionTable& t);

/// Reads a table. Rows must appear in lexicographic input order and cover
/// S^m exactly; otherwise IncompleteTable. Codes outside the carrier give
/// ConstOutOfRange; malformed text gives InvalidFormat.
FunctionTable table_from_csv(std::string_view text, const Semiring& s);

struct CsvDataset {
  std::size_t input_arity = 0;
  std::size_t output_arity = 0;
  Dataset samples;
};

/// Same header convention as tables; rows in any order, repeats allowed.
CsvDataset dataset_from_csv(std::string_view text, const Semiring& s);
std::string dataset_to_csv(const CsvDataset& d);

}  // namespace polycirc

#endif  // POLYCIRC_CSV_HPP
