#include "polycirc/csv.hpp"

#include <charconv>
#include <sstream>

#include "polycirc/error.hpp"

namespace polycirc {

namespace {

struct Header {
  std::size_t xs = 0;
  std::size_t ys = 0;
};

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    auto cell = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
    cells.push_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

// Non-empty lines with any trailing carriage return removed.
std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    auto line = text.substr(start, nl == std::string_view::npos ? text.npos : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

Header parse_header(std::string_view line) {
  Header h;
  for (const auto cell : split(line)) {
    if (h.ys == 0 && cell == "x" + std::to_string(h.xs)) {
      ++h.xs;
    } else if (cell == "y" + std::to_string(h.ys)) {
      ++h.ys;
    } else {
      throw Error(ErrorCode::InvalidFormat, "unexpected header cell '" + std::string(cell) + "'");
    }
  }
  return h;
}

std::vector<Element> parse_row(std::string_view line, std::size_t width, std::size_t line_no,
                               const Semiring& s) {
  const auto cells = split(line);
  if (cells.size() != width) {
    throw Error(ErrorCode::InvalidFormat, "line " + std::to_string(line_no) + ": expected " +
                                              std::to_string(width) + " cells, got " +
                                              std::to_string(cells.size()));
  }
  std::vector<Element> row;
  row.reserve(width);
  for (const auto cell : cells) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
      throw Error(ErrorCode::InvalidFormat,
                  "line " + std::to_string(line_no) + ": '" + std::string(cell) + "' is not a code");
    }
    if (!s.contains(Element{v})) {
      throw Error(ErrorCode::ConstOutOfRange, "line " + std::to_string(line_no) + ": code " +
                                                  std::to_string(v) + " outside carrier of " + s.id());
    }
    row.push_back(Element{v});
  }
  return row;
}

std::string header_line(std::size_t m, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < m; ++i) out += (out.empty() ? "" : ",") + ("x" + std::to_string(i));
  for (std::size_t j = 0; j < n; ++j) out += (out.empty() ? "" : ",") + ("y" + std::to_string(j));
  return out + "\n";
}

std::string row_line(const Tuple& x, const Tuple& y) {
  Tuple all(x);
  all.insert(all.end(), y.begin(), y.end());
  return format_tuple(all) + "\n";
}

}  // namespace

std::string table_to_csv(const FunctionTable& t) {
  std::string out = header_line(t.arity(), t.coarity());
  for (std::uint64_t r = 0; r < t.rows(); ++r) out += row_line(t.input(r), t.output(r));
  return out;
}

FunctionTable table_from_csv(std::string_view text, const Semiring& s) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw Error(ErrorCode::InvalidFormat, "empty table");
  const Header h = parse_header(lines.front());
  const std::uint64_t k = s.size();
  const std::uint64_t rows = enumeration_size(s, h.xs, kDefaultBudget);
  if (lines.size() - 1 != rows) {
    throw Error(ErrorCode::IncompleteTable, "expected " + std::to_string(rows) + " rows, got " +
                                                std::to_string(lines.size() - 1));
  }
  std::vector<Element> outputs;
  outputs.reserve(rows * h.ys);
  Tuple expected(h.xs);
  for (std::uint64_t r = 0; r < rows; ++r) {
    const auto row = parse_row(lines[r + 1], h.xs + h.ys, r + 2, s);
    decode_index(r, k, expected);
    if (!std::equal(expected.begin(), expected.end(), row.begin())) {
      throw Error(ErrorCode::IncompleteTable, "line " + std::to_string(r + 2) + ": expected input (" +
                                                  format_tuple(expected) + ")");
    }
    outputs.insert(outputs.end(), row.begin() + static_cast<std::ptrdiff_t>(h.xs), row.end());
  }
  return FunctionTable(s.id(), k, Shape{h.xs, h.ys}, std::move(outputs));
}

CsvDataset dataset_from_csv(std::string_view text, const Semiring& s) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw Error(ErrorCode::InvalidFormat, "empty dataset");
  const Header h = parse_header(lines.front());
  CsvDataset d{h.xs, h.ys, {}};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = parse_row(lines[i], h.xs + h.ys, i + 1, s);
    const auto split_at = row.begin() + static_cast<std::ptrdiff_t>(h.xs);
    d.samples.push_back({Tuple(row.begin(), split_at), Tuple(split_at, row.end())});
  }
  return d;
}

std::string dataset_to_csv(const CsvDataset& d) {
  std::string out = header_line(d.input_arity, d.output_arity);
  for (const auto& sample : d.samples) out += row_line(sample.x, sample.y);
  return out;
}

}  // namespace polycirc
