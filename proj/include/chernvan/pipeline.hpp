#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "chernvan/run_report.hpp"

namespace chernvan {

// Each runner returns a finalized report. Bad arguments raise
// std::invalid_argument, unreadable or malformed inputs raise InputError.

RunReport run_numbers(int n_max);
RunReport run_identities(int g_max, int d_max);
RunReport run_lemma21(int g, int d);

RunReport run_grr_certify(const std::string& config_path);
// Every stratum when `subset` is empty, otherwise the stratum "Y1,Y2".
RunReport run_grr_delta(const std::string& config_path, const std::string& subset = {});
RunReport run_grr_reduce(const std::string& config_path, const std::string& expression,
                         std::optional<std::uint64_t> seed = std::nullopt);

RunReport run_cone_check(const std::string& cone_path, bool even_level,
                         std::optional<long> bound = std::nullopt);

struct VerifyAllOptions {
  int g_max = 4;
  int d_max = 10;
  std::string fixture_dir;  // holds corpus.json
};

RunReport run_verify_all(const VerifyAllOptions& options);

}  // namespace chernvan
