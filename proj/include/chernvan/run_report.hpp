#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace chernvan {

inline constexpr const char* kRunReportSchema = "chernvan.run-report/1";

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string details;
  bool operator==(const CheckResult&) const = default;
};

// Timing lives outside the machine-readable report so that the report is a
// pure function of the inputs.
struct PhaseTiming {
  std::string phase;
  double seconds = 0.0;
};

struct RunReport {
  std::string schema = kRunReportSchema;
  std::string subcommand;
  std::string inputs_digest;  // FNV-1a 64 of the canonical input description, hex
  bool passed = false;
  std::vector<CheckResult> checks;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  std::vector<PhaseTiming> timing;

  void add_check(std::string name, bool ok, std::string details = {});
  // Recomputes `passed` as the conjunction of all checks.
  void finalize();
  const CheckResult* first_failure() const;
};

std::string fnv1a64_hex(std::string_view bytes);

std::string to_json(const RunReport& r);
std::string timing_json(const RunReport& r);
std::string to_text(const RunReport& r);
// Inverse of to_json. Throws InputError(parse).
RunReport parse_run_report(std::string_view json_text);

}  // namespace chernvan
