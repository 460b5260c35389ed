#include "chernvan/chernvan.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include "chernvan/boundary_config.hpp"
#include "chernvan/cone.hpp"
#include "chernvan/error.hpp"
#include "chernvan/grr_ledger.hpp"
#include "chernvan/numbers.hpp"
#include "chernvan/pipeline.hpp"

struct cv_report {
  chernvan::RunReport report;
};
struct cv_boundary_config {
  chernvan::BoundaryConfig cfg;
};
struct cv_cone {
  chernvan::Cone cone;
};

namespace {

thread_local std::string last_error;

cv_status fail(cv_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <typename F>
cv_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const chernvan::InputError& e) {
    switch (e.kind()) {
      case chernvan::ErrorKind::parse: return fail(CV_PARSE, e.what());
      case chernvan::ErrorKind::validation: return fail(CV_VALIDATION, e.what());
      case chernvan::ErrorKind::io: return fail(CV_IO, e.what());
    }
    return fail(CV_INTERNAL, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(CV_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(CV_INTERNAL, e.what());
  } catch (...) {
    return fail(CV_INTERNAL, "unknown error");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

cv_status store(chernvan::RunReport&& r, cv_report** out) {
  const bool passed = r.passed;
  std::string first;
  if (const auto* c = r.first_failure()) first = c->name + (c->details.empty() ? "" : ": " + c->details);
  *out = new cv_report{std::move(r)};
  return passed ? CV_OK : fail(CV_CHECK_FAILED, first);
}

template <typename F>
cv_status run(cv_report** out, F&& f) {
  if (!out) return fail(CV_INVALID_ARGUMENT, "out pointer is NULL");
  *out = nullptr;
  return guarded([&] { return store(f(), out); });
}

cv_status number(char** out, chernvan::Rat (*fn)(unsigned), unsigned n) {
  if (!out) return fail(CV_INVALID_ARGUMENT, "out pointer is NULL");
  return guarded([&] {
    *out = dup(fn(n).str());
    return CV_OK;
  });
}

}  // namespace

extern "C" {

const char* cv_last_error(void) { return last_error.c_str(); }

const char* cv_status_name(cv_status status) {
  switch (status) {
    case CV_OK: return "ok";
    case CV_INVALID_ARGUMENT: return "invalid argument";
    case CV_PARSE: return "parse error";
    case CV_VALIDATION: return "validation error";
    case CV_CHECK_FAILED: return "check failed";
    case CV_IO: return "i/o error";
    case CV_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* cv_version(void) { return "1.0.0"; }

void cv_string_free(char* s) { std::free(s); }

cv_status cv_bernoulli(unsigned n, char** out) { return number(out, chernvan::bernoulli, n); }
cv_status cv_euler_number(unsigned n, char** out) { return number(out, chernvan::euler_number, n); }
cv_status cv_euler_via_bernoulli(unsigned n, char** out) {
  return number(out, chernvan::euler_via_bernoulli, n);
}

cv_status cv_run_numbers(int n_max, cv_report** out) {
  return run(out, [&] { return chernvan::run_numbers(n_max); });
}

cv_status cv_run_identities(int g_max, int d_max, cv_report** out) {
  return run(out, [&] { return chernvan::run_identities(g_max, d_max); });
}

cv_status cv_run_lemma21(int g, int d, cv_report** out) {
  return run(out, [&] { return chernvan::run_lemma21(g, d); });
}

cv_status cv_run_grr_certify(const char* config_path, cv_report** out) {
  if (!config_path) return fail(CV_INVALID_ARGUMENT, "config path is NULL");
  return run(out, [&] { return chernvan::run_grr_certify(config_path); });
}

cv_status cv_run_grr_delta(const char* config_path, const char* subset, cv_report** out) {
  if (!config_path) return fail(CV_INVALID_ARGUMENT, "config path is NULL");
  return run(out, [&] { return chernvan::run_grr_delta(config_path, subset ? subset : ""); });
}

cv_status cv_run_grr_reduce(const char* config_path, const char* expression, int use_seed,
                            uint64_t seed, cv_report** out) {
  if (!config_path || !expression) return fail(CV_INVALID_ARGUMENT, "NULL argument");
  return run(out, [&] {
    return chernvan::run_grr_reduce(config_path, expression,
                                    use_seed ? std::optional<std::uint64_t>(seed) : std::nullopt);
  });
}

cv_status cv_run_cone_check(const char* cone_path, int even_level, long bound, cv_report** out) {
  if (!cone_path) return fail(CV_INVALID_ARGUMENT, "cone path is NULL");
  return run(out, [&] {
    return chernvan::run_cone_check(cone_path, even_level != 0,
                                    bound < 0 ? std::nullopt : std::optional<long>(bound));
  });
}

cv_status cv_run_verify_all(int g_max, int d_max, const char* fixture_dir, cv_report** out) {
  if (!fixture_dir) return fail(CV_INVALID_ARGUMENT, "fixture directory is NULL");
  return run(out, [&] { return chernvan::run_verify_all({g_max, d_max, fixture_dir}); });
}

cv_status cv_report_parse(const char* json, cv_report** out) {
  if (!json || !out) return fail(CV_INVALID_ARGUMENT, "NULL argument");
  *out = nullptr;
  return guarded([&] {
    *out = new cv_report{chernvan::parse_run_report(json)};
    return CV_OK;
  });
}

void cv_report_free(cv_report* report) { delete report; }

int cv_report_passed(const cv_report* report) { return report && report->report.passed ? 1 : 0; }

const char* cv_report_subcommand(const cv_report* report) {
  return report ? report->report.subcommand.c_str() : "";
}

size_t cv_report_check_count(const cv_report* report) {
  return report ? report->report.checks.size() : 0;
}

cv_status cv_report_check(const cv_report* report, size_t index, const char** name, int* passed,
                          const char** details) {
  if (!report || index >= report->report.checks.size())
    return fail(CV_INVALID_ARGUMENT, "check index out of range");
  const chernvan::CheckResult& c = report->report.checks[index];
  if (name) *name = c.name.c_str();
  if (passed) *passed = c.passed ? 1 : 0;
  if (details) *details = c.details.c_str();
  return CV_OK;
}

cv_status cv_report_json(const cv_report* report, char** out) {
  if (!report || !out) return fail(CV_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = dup(chernvan::to_json(report->report));
    return CV_OK;
  });
}

cv_status cv_report_text(const cv_report* report, char** out) {
  if (!report || !out) return fail(CV_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = dup(chernvan::to_text(report->report));
    return CV_OK;
  });
}

cv_status cv_report_timing_json(const cv_report* report, char** out) {
  if (!report || !out) return fail(CV_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = dup(chernvan::timing_json(report->report));
    return CV_OK;
  });
}

cv_status cv_boundary_config_load(const char* path, cv_boundary_config** out) {
  if (!path || !out) return fail(CV_INVALID_ARGUMENT, "NULL argument");
  *out = nullptr;
  return guarded([&] {
    *out = new cv_boundary_config{chernvan::load_boundary_config(path)};
    return CV_OK;
  });
}

void cv_boundary_config_free(cv_boundary_config* cfg) { delete cfg; }

cv_status cv_boundary_config_is_valid(const cv_boundary_config* cfg, int* out) {
  if (!cfg || !out) return fail(CV_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = chernvan::validation_problems(cfg->cfg).empty() ? 1 : 0;
    return CV_OK;
  });
}

cv_status cv_boundary_config_delta(const cv_boundary_config* cfg, const char* subset, int* out) {
  if (!cfg || !subset || !out) return fail(CV_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = chernvan::delta(cfg->cfg.parse_y_set(subset), cfg->cfg);
    return CV_OK;
  });
}

cv_status cv_cone_load(const char* path, cv_cone** out) {
  if (!path || !out) return fail(CV_INVALID_ARGUMENT, "NULL argument");
  *out = nullptr;
  return guarded([&] {
    *out = new cv_cone{chernvan::load_cone(path)};
    return CV_OK;
  });
}

void cv_cone_free(cv_cone* cone) { delete cone; }

cv_status cv_cone_is_smooth(const cv_cone* cone, int* out) {
  if (!cone || !out) return fail(CV_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = chernvan::is_smooth(cone->cone, chernvan::LatticeContext(cone->cone.g)) ? 1 : 0;
    return CV_OK;
  });
}

}  // extern "C"
