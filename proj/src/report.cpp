#include "pealab/report.hpp"

#include <algorithm>

namespace pealab {

void CheckReport::add(std::string name, bool passed, json witness, json detail, double millis) {
  records.push_back(CheckRecord{std::move(name), passed, std::move(witness), std::move(detail), millis});
}

void CheckReport::append(const CheckReport& other, const std::string& prefix) {
  for (const auto& r : other.records) {
    CheckRecord copy = r;
    copy.name = prefix + r.name;
    records.push_back(std::move(copy));
  }
}

bool CheckReport::passed() const {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.passed; });
}

const CheckRecord* CheckReport::find(const std::string& name) const {
  for (const auto& r : records)
    if (r.name == name) return &r;
  return nullptr;
}

const CheckRecord* CheckReport::first_failure() const {
  for (const auto& r : records)
    if (!r.passed) return &r;
  return nullptr;
}

json CheckReport::to_json(bool with_timing) const {
  std::vector<const CheckRecord*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckRecord* a, const CheckRecord* b) { return a->name < b->name; });

  json checks = json::array();
  for (const auto* r : sorted) {
    json rec = {{"name", r->name}, {"status", r->passed ? "PASS" : "FAIL"}};
    if (!r->witness.is_null()) rec["witness"] = r->witness;
    if (!r->detail.is_null()) rec["detail"] = r->detail;
    if (with_timing) rec["millis"] = r->millis;
    checks.push_back(std::move(rec));
  }
  return json{{"schema", kReportSchema},
              {"tool", "pealab"},
              {"version", kToolVersion},
              {"command", command},
              {"parameters", parameters},
              {"checks", std::move(checks)},
              {"verdict", passed() ? "PASS" : "FAIL"}};
}

}  // namespace pealab
