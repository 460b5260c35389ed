#include "chernvan/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "chernvan/boundary_config.hpp"
#include "chernvan/char_classes.hpp"
#include "chernvan/cone.hpp"
#include "chernvan/cycle_expr.hpp"
#include "chernvan/error.hpp"
#include "chernvan/grr_ledger.hpp"
#include "chernvan/numbers.hpp"
#include "chernvan/weight_one.hpp"

namespace chernvan {
namespace {

using json = nlohmann::ordered_json;

class PhaseTimer {
 public:
  PhaseTimer(RunReport& r, std::string name)
      : report_(r), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  ~PhaseTimer() {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
    report_.timing.push_back({name_, dt.count()});
  }

 private:
  RunReport& report_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(ErrorKind::io, std::string("cannot open ") + what + " '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

BoundaryConfig load_config_text(const std::string& path, const std::string& text) {
  try {
    return parse_boundary_config(text);
  } catch (const InputError& e) {
    throw InputError(e.kind(), path + ": " + e.what());
  }
}

Cone load_cone_text(const std::string& path, const std::string& text) {
  try {
    return parse_cone(text);
  } catch (const InputError& e) {
    throw InputError(e.kind(), path + ": " + e.what());
  }
}

std::string base_name(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

void require_range(const char* what, int value, int lo, int hi) {
  if (value < lo || value > hi)
    throw std::invalid_argument(std::string(what) + " must be in " + std::to_string(lo) + ".." +
                                std::to_string(hi) + ", got " + std::to_string(value));
}

void number_checks(RunReport& r) {
  bool bridge = true;
  std::string detail = "n = 1..64";
  for (unsigned n = 1; n <= 64 && bridge; ++n)
    if (euler_via_bernoulli(n) != euler_number(2 * n - 1)) {
      bridge = false;
      detail = "mismatch at n = " + std::to_string(n);
    }
  r.add_check("euler-bernoulli bridge", bridge, detail);

  bool nonzero = true;
  detail = "n = 1..200";
  for (unsigned n = 1; n <= 200 && nonzero; ++n)
    if (bernoulli(2 * n).is_zero()) {
      nonzero = false;
      detail = "B_" + std::to_string(2 * n) + " vanishes";
    }
  r.add_check("B_2n nonvanishing", nonzero, detail);
}

json lemma21_json(const Lemma21Report& rep) {
  json j;
  j["g"] = rep.num_vars;
  j["D"] = rep.trunc_degree;
  j["passed"] = rep.passed;
  j["dropped_constant_P"] = rep.dropped_constant_p;
  j["dropped_rank"] = rep.dropped_rank.str();
  j["odd_product_degree_zero"] = rep.odd_product_degree_zero.str();
  j["odd_residuals_P"] = json::array();
  for (const auto& [k, e] : rep.odd_residuals)
    j["odd_residuals_P"].push_back({{"degree", k}, {"residual", e.str()}});
  j["odd_residuals_ch"] = json::array();
  for (const auto& [k, e] : rep.ch_odd_residuals)
    j["odd_residuals_ch"].push_back({{"degree", k}, {"residual", e.str()}});
  j["even_ratios"] = json::array();
  for (const EvenRatio& e : rep.even_ratios)
    j["even_ratios"].push_back({{"n", e.n},
                                {"lambda", e.lambda.str()},
                                {"P_coefficient", e.p_coefficient.str()},
                                {"ch_coefficient", e.ch_coefficient.str()}});
  j["failures"] = rep.failures;
  return j;
}

void lemma21_into(RunReport& r, int g, int d) {
  const Lemma21Report rep = verify_lemma21(g, d);
  std::string detail = "g = " + std::to_string(g) + ", D = " + std::to_string(d);
  if (!rep.failures.empty()) detail += ": " + rep.failures.front();
  r.add_check("lemma21 g=" + std::to_string(g), rep.passed, detail);

  // prod (1 + e^a_i)(1 + e^-a_i) = ch lambda_1(H)
  const RelationReport rel = first_relation_rewrite(g, d);
  r.add_check("first relation g=" + std::to_string(g), rel.passed,
              rel.first_failing_degree ? "sides differ in degree " + std::to_string(*rel.first_failing_degree) : "");
  r.add_check("even wedge product degree-0 g=" + std::to_string(g),
              rel.degree_zero == power_of_two(2 * g),
              "degree-0 part " + rel.degree_zero.str() + ", expected " + power_of_two(2 * g).str());
  r.data["lemma21"].push_back(lemma21_json(rep));
}

void identities_into(RunReport& r, int g_max, int d_max) {
  r.data["cg_identity"] = json::array();
  for (int g = 1; g <= g_max; ++g) {
    const int d = std::min(2 * g + 2, d_max);
    const IdentityReport rep = verify_cg_identity(g, d);
    std::string detail = "D = " + std::to_string(d);
    if (rep.first_failing_degree) detail += ", first failing degree " + std::to_string(*rep.first_failing_degree);
    r.add_check("c_g identity g=" + std::to_string(g), rep.passed, detail);
    r.data["cg_identity"].push_back({{"g", g}, {"D", d}, {"passed", rep.passed}});
  }
  r.data["lambda_product"] = json::array();
  for (int g = 1; g <= std::min(3, g_max); ++g) {
    const int d = std::min(8, d_max);
    const LambdaProductReport rep = verify_lambda_product(g, d);
    std::string detail = "D = " + std::to_string(d);
    if (rep.first_failure)
      detail += ", first mismatch at t^" + std::to_string(rep.first_failure->first) + " degree " +
                std::to_string(rep.first_failure->second);
    r.add_check("lambda product g=" + std::to_string(g), rep.passed, detail);
    r.data["lambda_product"].push_back({{"g", g}, {"D", d}, {"passed", rep.passed}});
  }
}

json certificate_json(const GrrCertificate& cert, const BoundaryConfig& cfg) {
  json j;
  j["certified"] = cert.certified;
  j["validation_problems"] = cert.validation_problems;
  if (!cert.validation_problems.empty()) return j;
  j["z_support"] = cfg.format_y_set(cfg.z_support);
  j["cg_identity"] = {{"g", cert.cg_identity->num_vars},
                      {"D", cert.cg_identity->trunc_degree},
                      {"passed", cert.cg_identity->passed}};
  j["err_terms"] = json::array();
  for (const CorrectionTerm& t : cert.audit->err_terms) j["err_terms"].push_back(describe_term(t, cfg));
  j["correction_ledger"] = cert.ledger;
  j["counterexamples"] = cert.audit->counterexamples;
  return j;
}

void certificate_checks(RunReport& r, const GrrCertificate& cert, const std::string& prefix) {
  std::string problems;
  for (const std::string& p : cert.validation_problems) problems += (problems.empty() ? "" : "; ") + p;
  r.add_check(prefix + "validation", cert.validation_problems.empty(), problems);
  if (!cert.validation_problems.empty()) return;
  r.add_check(prefix + "c_g identity", cert.cg_identity->passed,
              "g = " + std::to_string(cert.cg_identity->num_vars));
  r.add_check(prefix + "support audit", cert.audit->passed,
              cert.audit->counterexamples.empty() ? std::to_string(cert.ledger.size()) +
                                                        " correction terms annihilated"
                                                  : cert.audit->counterexamples.front());
}

std::string render_step(const RewriteStep& s, const BoundaryConfig& cfg) {
  std::string out = s.coefficient.str() + "*" + render_monomial(s.monomial, cfg) + ": ";
  if (s.killed != KillReason::survives) return out + "killed (" + kill_reason_name(s.killed) + ")";
  const Substitution& sub = *s.substitution;
  return out + "substitute " + cfg.y_names[sub.index] + " on " + cfg.format_y_set(sub.stratum) +
         " by " + sub.replacement.str(cfg) + (s.round_trip_ok ? "" : " [round trip FAILED]");
}

json cone_json(const Cone& c) {
  json gens = json::array();
  for (const BPoint& v : c.generators) gens.push_back(format_point(v));
  return gens;
}

struct ConeOutcome {
  bool smooth = false;
  std::optional<InvarianceWitness> witness;
  std::optional<FixedStratumReport> fixed;
};

ConeOutcome analyse_cone(const Cone& c, bool even_level, long bound, json& data) {
  const LatticeContext ctx(c.g);
  ConeOutcome out;
  IntMatrix m;
  for (const BPoint& v : c.generators) m.push_back(flatten(v));
  json divisors = json::array();
  for (const mpz_class& d : elementary_divisors(m)) divisors.push_back(d.get_str());
  out.smooth = is_smooth(c, ctx);
  data["g"] = c.g;
  data["generators"] = cone_json(c);
  data["elementary_divisors"] = divisors;
  data["smooth"] = out.smooth;
  data["bound"] = bound;
  out.witness = find_invariance_witness(c, ctx, bound);
  if (out.witness) {
    json mu = json::array();
    for (const mpz_class& x : out.witness->mu) mu.push_back(x.get_str());
    data["witness"] = {{"permutation", out.witness->permutation}, {"mu", mu}};
  } else {
    data["witness"] = "no witness found (bounded search)";
  }
  if (out.smooth && out.witness && even_level) {
    out.fixed = fixed_stratum_check(c, *out.witness, ctx, true);
    data["fixed_stratum"] = {{"status", status_name(out.fixed->status)},
                             {"summary", out.fixed->summary},
                             {"assertions", out.fixed->assertions},
                             {"rank_with_l", out.fixed->rank_with_l},
                             {"rank_b", out.fixed->rank_b}};
  } else {
    data["fixed_stratum"] = nullptr;
  }
  return out;
}

const char* fixed_key(FixedStratumStatus s) {
  switch (s) {
    case FixedStratumStatus::smooth_locus: return "smooth_locus";
    case FixedStratumStatus::hypothesis_violation: return "hypothesis_violation";
    case FixedStratumStatus::failed: return "failed";
  }
  return "?";
}

}  // namespace

RunReport run_numbers(int n_max) {
  require_range("n_max", n_max, 0, 500);
  RunReport r;
  r.subcommand = "numbers";
  r.inputs_digest = fnv1a64_hex("numbers n_max=" + std::to_string(n_max));
  {
    PhaseTimer t(r, "table");
    r.data["bernoulli"] = json::array();
    r.data["euler"] = json::array();
    for (int n = 0; n <= n_max; ++n) {
      r.data["bernoulli"].push_back({{"n", n}, {"value", bernoulli(n).str()}});
      r.data["euler"].push_back({{"n", n}, {"value", euler_number(n).str()}});
    }
  }
  {
    PhaseTimer t(r, "checks");
    number_checks(r);
    bool odd = true;
    for (int n = 3; n <= std::max(n_max, 3); n += 2) odd = odd && bernoulli(n).is_zero();
    r.add_check("odd Bernoulli numbers vanish", odd, "n >= 3");
  }
  r.finalize();
  return r;
}

RunReport run_identities(int g_max, int d_max) {
  require_range("g_max", g_max, 1, 6);
  require_range("D_max", d_max, 2, 14);
  RunReport r;
  r.subcommand = "identities";
  r.inputs_digest = fnv1a64_hex("identities g_max=" + std::to_string(g_max) +
                                " D_max=" + std::to_string(d_max));
  {
    PhaseTimer t(r, "identities");
    identities_into(r, g_max, d_max);
  }
  r.finalize();
  return r;
}

RunReport run_lemma21(int g, int d) {
  require_range("g", g, 1, 6);
  require_range("D", d, 2, 14);
  RunReport r;
  r.subcommand = "lemma21";
  r.inputs_digest = fnv1a64_hex("lemma21 g=" + std::to_string(g) + " D=" + std::to_string(d));
  r.data["lemma21"] = json::array();
  {
    PhaseTimer t(r, "lemma21");
    lemma21_into(r, g, d);
  }
  r.finalize();
  return r;
}

RunReport run_grr_certify(const std::string& config_path) {
  const std::string text = read_file(config_path, "boundary config");
  const BoundaryConfig cfg = load_config_text(config_path, text);
  RunReport r;
  r.subcommand = "grr certify";
  r.inputs_digest = fnv1a64_hex("grr certify\n" + text);
  r.data["config"] = base_name(config_path);
  {
    PhaseTimer t(r, "certify");
    const GrrCertificate cert = theorem_grr_certify(cfg);
    certificate_checks(r, cert, "");
    r.data["certificate"] = certificate_json(cert, cfg);
  }
  r.finalize();
  return r;
}

RunReport run_grr_delta(const std::string& config_path, const std::string& subset) {
  const std::string text = read_file(config_path, "boundary config");
  const BoundaryConfig cfg = load_config_text(config_path, text);
  RunReport r;
  r.subcommand = "grr delta";
  r.inputs_digest = fnv1a64_hex("grr delta " + subset + "\n" + text);
  r.data["config"] = base_name(config_path);
  std::vector<IndexSet> targets;
  if (subset.empty()) {
    targets.assign(cfg.strata.begin(), cfg.strata.end());
  } else {
    const IndexSet s = cfg.parse_y_set(subset);
    if (!cfg.is_stratum(s))
      throw InputError(ErrorKind::validation, cfg.format_y_set(s) + " is not a nonempty stratum");
    targets.push_back(s);
  }
  PhaseTimer t(r, "delta");
  r.data["strata"] = json::array();
  bool ok = true;
  std::string detail;
  for (IndexSet s : targets) {
    try {
      const int d = delta(s, cfg);
      r.data["strata"].push_back({{"stratum", cfg.format_y_set(s)},
                                  {"J", cfg.format_t_set(cfg.j_of(s))},
                                  {"delta", d},
                                  {"residue_factors", d > 0}});
    } catch (const std::logic_error& e) {
      ok = false;
      if (detail.empty()) detail = cfg.format_y_set(s) + ": " + e.what();
    }
  }
  r.add_check("delta = 0 implies |I| <= |J(I)|", ok, detail);
  r.finalize();
  return r;
}

RunReport run_grr_reduce(const std::string& config_path, const std::string& expression,
                         std::optional<std::uint64_t> seed) {
  const std::string text = read_file(config_path, "boundary config");
  const BoundaryConfig cfg = load_config_text(config_path, text);
  const CycleExpr expr = parse_cycle_expr(expression, cfg);
  RunReport r;
  r.subcommand = "grr reduce";
  r.inputs_digest = fnv1a64_hex("grr reduce " + expression + " seed=" +
                                (seed ? std::to_string(*seed) : "none") + "\n" + text);
  r.data["config"] = base_name(config_path);
  r.data["input"] = expr.str(cfg);
  PhaseTimer t(r, "reduce");
  ReduceResult res;
  try {
    res = reduce(expr, cfg, ReduceOptions{seed});
  } catch (const std::invalid_argument& e) {
    throw InputError(ErrorKind::validation, e.what());
  }
  r.data["normal_form"] = res.normal_form.str(cfg);
  r.data["rounds"] = res.rounds;
  r.data["steps"] = json::array();
  for (const RewriteStep& s : res.steps) r.data["steps"].push_back(render_step(s, cfg));
  r.data["untouched"] = json::array();
  for (const CycleMonomial& m : res.untouched) r.data["untouched"].push_back(render_monomial(m, cfg));
  r.add_check("substitution round trips", res.all_round_trips_ok);

  bool shape = true;
  std::string detail;
  for (const auto& [m, c] : res.normal_form.terms()) {
    const IndexSet s = m.support();
    if ((s & cfg.z_support) == 0) continue;
    const bool ok = m.excess() == 0 && cfg.is_stratum(s) && delta(s, cfg) == 0;
    if (!ok && shape) detail = render_monomial(m, cfg);
    shape = shape && ok;
  }
  r.add_check("normal form shape", shape, detail);
  r.finalize();
  return r;
}

RunReport run_cone_check(const std::string& cone_path, bool even_level, std::optional<long> bound) {
  const std::string text = read_file(cone_path, "cone file");
  const Cone c = load_cone_text(cone_path, text);
  const long b = bound.value_or(default_witness_bound(c));
  if (b < 0) throw std::invalid_argument("bound must be >= 0");
  RunReport r;
  r.subcommand = "cone check";
  r.inputs_digest = fnv1a64_hex("cone check even_level=" + std::to_string(even_level) +
                                " bound=" + std::to_string(b) + "\n" + text);
  r.data["cone"] = base_name(cone_path);
  r.data["even_level"] = even_level;
  PhaseTimer t(r, "cone");
  const ConeOutcome out = analyse_cone(c, even_level, b, r.data);
  r.add_check("smooth", out.smooth);
  r.add_check("invariance witness", out.witness.has_value(),
              out.witness ? "" : "no witness found (bounded search)");
  if (out.fixed)
    r.add_check("fixed stratum", out.fixed->status != FixedStratumStatus::failed, out.fixed->summary);
  r.finalize();
  return r;
}

RunReport run_verify_all(const VerifyAllOptions& options) {
  require_range("g_max", options.g_max, 1, 6);
  require_range("D_max", options.d_max, 2, 14);
  const std::filesystem::path dir(options.fixture_dir);
  const std::string manifest_path = (dir / "corpus.json").string();
  const std::string manifest_text = read_file(manifest_path, "corpus manifest");
  json manifest;
  try {
    manifest = json::parse(manifest_text);
  } catch (const json::exception& e) {
    throw InputError(ErrorKind::parse, manifest_path + ": " + e.what());
  }

  RunReport r;
  r.subcommand = "verify-all";
  std::string digest_input = "verify-all g_max=" + std::to_string(options.g_max) +
                             " D_max=" + std::to_string(options.d_max) + "\n" + manifest_text;
  {
    PhaseTimer t(r, "numbers");
    number_checks(r);
  }
  {
    PhaseTimer t(r, "lemma21");
    r.data["lemma21"] = json::array();
    for (int g = 1; g <= options.g_max; ++g) lemma21_into(r, g, std::min(2 * g + 2, options.d_max));
  }
  {
    PhaseTimer t(r, "identities");
    identities_into(r, options.g_max, options.d_max);
  }

  try {
    PhaseTimer t(r, "grr");
    r.data["grr"] = json::array();
    for (const auto& entry : manifest.at("grr")) {
      const std::string rel = entry.at("config").get<std::string>();
      const std::string expect = entry.at("expect").get<std::string>();
      const std::string name = "grr " + rel;
      try {
        const std::string text = read_file((dir / rel).string(), "boundary config");
        digest_input += "\n" + rel + "\n" + text;
        const BoundaryConfig cfg = load_config_text(rel, text);
        const GrrCertificate cert = theorem_grr_certify(cfg);
        json d = certificate_json(cert, cfg);
        d["config"] = rel;
        r.data["grr"].push_back(d);
        if (expect == "rejected") {
          r.add_check(name, !cert.validation_problems.empty(),
                      cert.validation_problems.empty() ? "expected rejection at validation"
                                                       : "rejected: " + cert.validation_problems.front());
          continue;
        }
        const std::string ledger = entry.value("ledger", "any");
        bool ok = cert.certified;
        std::string detail = ok ? std::to_string(cert.ledger.size()) + " ledger entries" : "";
        if (!cert.validation_problems.empty()) detail = "rejected: " + cert.validation_problems.front();
        else if (!cert.certified && !cert.audit->counterexamples.empty())
          detail = cert.audit->counterexamples.front();
        else if (!cert.certified) detail = "c_g identity failed";
        if (ok && ledger == "empty" && !cert.ledger.empty()) ok = false, detail = "ledger not empty";
        if (ok && ledger == "nonempty" && cert.ledger.empty()) ok = false, detail = "ledger empty";
        r.add_check(name, ok, detail);
      } catch (const InputError& e) {
        r.add_check(name, false, e.what());
      }
    }
  } catch (const json::exception& e) {
    throw InputError(ErrorKind::parse, manifest_path + ": " + e.what());
  }

  try {
    PhaseTimer t(r, "cones");
    r.data["cones"] = json::array();
    for (const auto& entry : manifest.at("cones")) {
      const std::string rel = entry.at("cone").get<std::string>();
      const std::string name = "cone " + rel;
      try {
        const std::string text = read_file((dir / rel).string(), "cone file");
        digest_input += "\n" + rel + "\n" + text;
        const Cone c = load_cone_text(rel, text);
        const bool even = entry.value("even_level", true);
        json d;
        d["cone"] = rel;
        const ConeOutcome out = analyse_cone(c, even, default_witness_bound(c), d);
        r.data["cones"].push_back(d);
        std::vector<std::string> mismatches;
        if (out.smooth != entry.at("smooth").get<bool>()) mismatches.push_back("smoothness");
        if (out.witness.has_value() != entry.at("witness").get<bool>()) mismatches.push_back("witness");
        const json& fixed = entry.at("fixed_stratum");
        const std::string got = out.fixed ? fixed_key(out.fixed->status) : "none";
        const std::string want = fixed.is_null() ? "none" : fixed.get<std::string>();
        if (got != want) mismatches.push_back("fixed stratum " + got + " (expected " + want + ")");
        std::string detail;
        for (const std::string& m : mismatches) detail += (detail.empty() ? "mismatch: " : ", ") + m;
        r.add_check(name, mismatches.empty(), detail.empty() ? got : detail);
      } catch (const InputError& e) {
        r.add_check(name, false, e.what());
      }
    }
  } catch (const json::exception& e) {
    throw InputError(ErrorKind::parse, manifest_path + ": " + e.what());
  }

  r.inputs_digest = fnv1a64_hex(digest_input);
  r.finalize();
  return r;
}

}  // namespace chernvan
