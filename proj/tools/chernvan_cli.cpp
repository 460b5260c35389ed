#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "chernvan/chernvan.h"

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kUsage = 2, kInput = 3, kInternal = 4 };

struct ReportDeleter {
  void operator()(cv_report* r) const { cv_report_free(r); }
};
using ReportPtr = std::unique_ptr<cv_report, ReportDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  cv_string_free(s);
  return out;
}

std::string report_json(const cv_report* r) {
  char* s = nullptr;
  cv_report_json(r, &s);
  return take(s);
}

int exit_for(cv_status s) {
  switch (s) {
    case CV_OK: return kPass;
    case CV_CHECK_FAILED: return kCheckFailed;
    case CV_INVALID_ARGUMENT: return kUsage;
    case CV_PARSE:
    case CV_VALIDATION:
    case CV_IO: return kInput;
    case CV_INTERNAL: return kInternal;
  }
  return kInternal;
}

bool write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

struct Output {
  std::string format = "text";
  std::string out_dir;
};

// Prints the report, stores report and timing under the output directory and
// maps the status to an exit code.
int finish(cv_status status, cv_report* raw, const Output& opts) {
  ReportPtr report(raw);
  if (!report) {
    std::cerr << "chernvan: " << cv_status_name(status) << ": " << cv_last_error() << "\n";
    return exit_for(status);
  }
  const std::string failure = status == CV_CHECK_FAILED ? cv_last_error() : "";
  if (opts.format == "json") {
    std::cout << report_json(report.get());
  } else {
    char* text = nullptr;
    cv_report_text(report.get(), &text);
    std::cout << take(text);
  }
  if (!opts.out_dir.empty()) {
    std::string stem = cv_report_subcommand(report.get());
    for (char& c : stem)
      if (c == ' ') c = '-';
    std::error_code ec;
    std::filesystem::create_directories(opts.out_dir, ec);
    char* timing = nullptr;
    cv_report_timing_json(report.get(), &timing);
    const std::filesystem::path dir(opts.out_dir);
    if (ec || !write_file(dir / (stem + ".json"), report_json(report.get())) ||
        !write_file(dir / (stem + ".timing.json"), take(timing))) {
      std::cerr << "chernvan: cannot write reports to '" << opts.out_dir << "'\n";
      return kInput;
    }
  }
  if (status == CV_CHECK_FAILED)
    std::cerr << cv_report_subcommand(report.get()) << ": first failure: " << failure << "\n";
  return exit_for(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the weight-one characteristic class identities"};
  app.require_subcommand(1);

  Output out;
  if (const char* env = std::getenv("CHERNVAN_OUT_DIR")) out.out_dir = env;
  app.add_option("--format", out.format, "Report format on stdout")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out-dir", out.out_dir,
                 "Directory for report files (default: $CHERNVAN_OUT_DIR, unset writes none)");

  int n_max = 20;
  auto* numbers = app.add_subcommand("numbers", "Bernoulli and Euler number tables and cross-checks");
  numbers->add_option("--max", n_max, "Largest index in the tables")->check(CLI::Range(0, 500));

  int g_max = 4, d_max = 10;
  auto* identities = app.add_subcommand("identities", "c_g and lambda-product identities");
  identities->add_option("--g-max", g_max)->check(CLI::Range(1, 6));
  identities->add_option("--d-max", d_max)->check(CLI::Range(2, 14));

  int g = 1;
  std::optional<int> d;
  auto* lemma = app.add_subcommand("lemma21", "Weight-one power-sum certification");
  lemma->add_option("--g", g, "Number of Chern roots")->required()->check(CLI::Range(1, 6));
  lemma->add_option("--d", d, "Truncation degree (default 2g+2)")->check(CLI::Range(2, 14));

  std::string config, subset, expression;
  std::optional<std::uint64_t> seed;
  auto* grr = app.add_subcommand("grr", "Boundary configuration tools");
  grr->require_subcommand(1);
  auto* certify = grr->add_subcommand("certify", "Certify the GRR cancellation ledger");
  certify->add_option("config", config)->required();
  auto* delta = grr->add_subcommand("delta", "delta for every stratum or one stratum");
  delta->add_option("config", config)->required();
  delta->add_option("--set", subset, "Stratum such as Y1,Y2");
  auto* reduce = grr->add_subcommand("reduce", "Normal form of a c_g cycle expression");
  reduce->add_option("config", config)->required();
  reduce->add_option("expression,--expr", expression, "Cycle expression, e.g. \"cg*Y1*Y1\"")->required();
  reduce->add_option("--seed", seed, "Randomize the rewrite order");

  std::string cone_path;
  bool even_level = false;
  std::optional<long> bound;
  auto* cone = app.add_subcommand("cone", "Cone tools");
  cone->require_subcommand(1);
  auto* check = cone->add_subcommand("check", "Smoothness, invariance witness, fixed stratum");
  check->add_option("file", cone_path)->required();
  check->add_flag("--even-level", even_level, "Assume the even-level rescaling");
  check->add_option("--bound", bound, "Search bound for mu")->check(CLI::NonNegativeNumber);

  std::string fixtures = CHERNVAN_DEFAULT_FIXTURES;
  auto* verify = app.add_subcommand("verify-all", "Run the full verification pipeline");
  verify->add_option("--g-max", g_max)->check(CLI::Range(1, 6));
  verify->add_option("--d-max", d_max)->check(CLI::Range(2, 14));
  verify->add_option("--fixtures", fixtures, "Directory holding corpus.json");

  std::string report_path, output_path, report_format = "text";
  auto* report = app.add_subcommand("report", "Re-render a saved machine-readable report");
  report->add_option("file", report_path)->required();
  report->add_option("--as", report_format)->check(CLI::IsMember({"text", "json"}));
  report->add_option("-o,--output", output_path, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  cv_report* r = nullptr;
  std::optional<cv_status> status;
  if (*numbers) status = cv_run_numbers(n_max, &r);
  if (*identities) status = cv_run_identities(g_max, d_max, &r);
  if (*lemma) status = cv_run_lemma21(g, d.value_or(2 * g + 2), &r);
  if (*certify) status = cv_run_grr_certify(config.c_str(), &r);
  if (*delta)
    status = cv_run_grr_delta(config.c_str(), subset.empty() ? nullptr : subset.c_str(), &r);
  if (*reduce)
    status = cv_run_grr_reduce(config.c_str(), expression.c_str(), seed.has_value(),
                               seed.value_or(0), &r);
  if (*check) status = cv_run_cone_check(cone_path.c_str(), even_level, bound.value_or(-1), &r);
  if (*verify) status = cv_run_verify_all(g_max, d_max, fixtures.c_str(), &r);
  if (status) return finish(*status, r, out);

  if (*report) {
    std::ifstream in(report_path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    const cv_status s = cv_report_parse(buf.str().c_str(), &r);
    ReportPtr parsed(r);
    if (s != CV_OK) {
      std::cerr << "chernvan: " << cv_status_name(s) << ": " << cv_last_error() << "\n";
      return exit_for(s);
    }
    char* text = nullptr;
    if (report_format == "json")
      cv_report_json(parsed.get(), &text);
    else
      cv_report_text(parsed.get(), &text);
    const std::string rendered = take(text);
    if (output_path.empty()) {
      std::cout << rendered;
    } else if (!write_file(output_path, rendered)) {
      std::cerr << "chernvan: cannot write '" << output_path << "'\n";
      return kInput;
    }
    return cv_report_passed(parsed.get()) ? kPass : kCheckFailed;
  }
  return kUsage;
}
