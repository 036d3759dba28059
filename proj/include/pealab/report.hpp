#pragma once

#include <chrono>
#include <string>
#include <vector>

#include <json.hpp>

namespace pealab {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr int kReportSchema = 1;

struct CheckRecord {
  std::string name;
  bool passed = false;
  json witness;  // null when passed or when no witness applies
  json detail;   // optional structured payload (class sizes, counts, ...)
  double millis = 0.0;
};

/// Structured verdict list for one command or verification run.
///
/// Records are kept in canonical order (sorted by name) when serialized, so
/// the output does not depend on the order in which checks ran.
struct CheckReport {
  std::string command;
  json parameters = json::object();
  std::vector<CheckRecord> records;

  void add(std::string name, bool passed, json witness = nullptr, json detail = nullptr, double millis = 0.0);
  void append(const CheckReport& other, const std::string& prefix = "");

  bool passed() const;
  const CheckRecord* find(const std::string& name) const;
  /// First failing record, or nullptr.
  const CheckRecord* first_failure() const;

  json to_json(bool with_timing = true) const;
};

/// Milliseconds elapsed since construction.
class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace pealab
