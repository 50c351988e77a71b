#ifndef POLYCIRC_REPORT_HPP
#define POLYCIRC_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polycirc/element.hpp"

namespace polycirc {

enum class Verdict { Pass, Fail, Skipped };

std::string_view to_string(Verdict v);

/// Outcome of checking one law. A failing law always carries the input tuple
/// that witnesses the failure; replaying it through eval reproduces it.
struct LawResult {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::uint64_t cases = 0;
  bool exhaustive = true;
  std::optional<std::uint64_t> seed;
  std::optional<Tuple> counterexample;
  std::string detail;
};

class AxiomReport {
 public:
  AxiomReport() = default;

  void add(LawResult r) { laws_.push_back(std::move(r)); }
  void append(const AxiomReport& other, const std::string& prefix = {});

  const std::vector<LawResult>& laws() const noexcept { return laws_; }
  const LawResult* find(std::string_view name) const;

  /// True when no law failed. Skipped laws do not count as failures.
  bool passed() const;

  /// JSON object {name: {status, cases, counterexample?, ...}}.
  std::string to_json() const;
  std::string to_text() const;

 private:
  std::vector<LawResult> laws_;
};

}  // namespace polycirc

#endif  // POLYCIRC_REPORT_HPP
