#include "chernvan/run_report.hpp"

#include <cstdio>
#include <sstream>

#include "chernvan/error.hpp"

namespace chernvan {

void RunReport::add_check(std::string name, bool ok, std::string details) {
  checks.push_back({std::move(name), ok, std::move(details)});
}

void RunReport::finalize() {
  passed = true;
  for (const CheckResult& c : checks) passed = passed && c.passed;
}

const CheckResult* RunReport::first_failure() const {
  for (const CheckResult& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = r.schema;
  j["subcommand"] = r.subcommand;
  j["inputs_digest"] = r.inputs_digest;
  j["passed"] = r.passed;
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& c : r.checks)
    j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"details", c.details}});
  j["data"] = r.data;
  return j.dump(2) + "\n";
}

std::string timing_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["subcommand"] = r.subcommand;
  j["phases"] = nlohmann::ordered_json::array();
  for (const PhaseTiming& t : r.timing)
    j["phases"].push_back({{"phase", t.phase}, {"seconds", t.seconds}});
  return j.dump(2) + "\n";
}

std::string to_text(const RunReport& r) {
  std::ostringstream out;
  out << r.subcommand << ": " << (r.passed ? "PASS" : "FAIL") << " (inputs " << r.inputs_digest
      << ")\n";
  for (const CheckResult& c : r.checks) {
    out << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.name;
    if (!c.details.empty()) out << ": " << c.details;
    out << "\n";
  }
  return out.str();
}

RunReport parse_run_report(std::string_view json_text) {
  try {
    const auto j = nlohmann::ordered_json::parse(json_text);
    RunReport r;
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != kRunReportSchema)
      throw InputError(ErrorKind::parse, "unsupported report schema '" + r.schema + "'");
    r.subcommand = j.at("subcommand").get<std::string>();
    r.inputs_digest = j.at("inputs_digest").get<std::string>();
    r.passed = j.at("passed").get<bool>();
    for (const auto& c : j.at("checks"))
      r.checks.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(),
                          c.at("details").get<std::string>()});
    r.data = j.at("data");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(ErrorKind::parse, std::string("malformed run report: ") + e.what());
  }
}

}  // namespace chernvan
