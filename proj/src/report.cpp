#include "polycirc/report.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "polycirc/error.hpp"

namespace polycirc {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "unknown";
}

void AxiomReport::append(const AxiomReport& other, const std::string& prefix) {
  for (auto law : other.laws_) {
    law.name = prefix + law.name;
    laws_.push_back(std::move(law));
  }
}

const LawResult* AxiomReport::find(std::string_view name) const {
  auto it = std::find_if(laws_.begin(), laws_.end(), [&](const LawResult& r) { return r.name == name; });
  return it == laws_.end() ? nullptr : &*it;
}

bool AxiomReport::passed() const {
  return std::none_of(laws_.begin(), laws_.end(),
                      [](const LawResult& r) { return r.verdict == Verdict::Fail; });
}

std::string AxiomReport::to_json() const {
  // ordered_json keeps laws in check order so output is byte-stable.
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& law : laws_) {
    nlohmann::ordered_json entry;
    entry["status"] = std::string(to_string(law.verdict));
    entry["cases"] = law.cases;
    entry["exhaustive"] = law.exhaustive;
    if (law.seed) entry["seed"] = *law.seed;
    if (law.counterexample) {
      auto arr = nlohmann::ordered_json::array();
      for (auto e : *law.counterexample) arr.push_back(e.code);
      entry["counterexample"] = std::move(arr);
    }
    if (!law.detail.empty()) entry["detail"] = law.detail;
    j[law.name] = std::move(entry);
  }
  return j.dump(2);
}

std::string AxiomReport::to_text() const {
  std::ostringstream os;
  for (const auto& law : laws_) {
    os << (law.verdict == Verdict::Pass ? "PASS " : law.verdict == Verdict::Fail ? "FAIL " : "SKIP ")
       << law.name << "  (" << law.cases << (law.exhaustive ? " cases" : " sampled cases") << ")";
    if (law.counterexample) os << "  counterexample: (" << format_tuple(*law.counterexample) << ")";
    if (!law.detail.empty()) os << "  " << law.detail;
    os << '\n';
  }
  return os.str();
}

}  // namespace polycirc
