// Acceptance gate: one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "chernvan/boundary_config.hpp"
#include "chernvan/char_classes.hpp"
#include "chernvan/cone.hpp"
#include "chernvan/cycle_expr.hpp"
#include "chernvan/grr_ledger.hpp"
#include "chernvan/numbers.hpp"
#include "chernvan/weight_one.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace chernvan;
namespace fs = std::filesystem;

namespace {

std::string g_cli;
std::string g_work;
bool g_all = true;

void criterion(int id, const std::string& title, double limit_seconds,
               const std::function<std::string()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string failure;
  try {
    failure = body();
  } catch (const std::exception& e) {
    failure = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (failure.empty() && secs > limit_seconds)
    failure = "took " + std::to_string(secs) + " s, limit " + std::to_string(limit_seconds) + " s";
  const bool ok = failure.empty();
  g_all = g_all && ok;
  std::printf("CRITERION %d: %s - %s (%.2f s)%s%s\n", id, ok ? "PASS" : "FAIL", title.c_str(), secs,
              ok ? "" : ": ", failure.c_str());
  std::fflush(stdout);
}

BoundaryConfig fixture_config(const std::string& name) {
  return load_boundary_config(testsupport::fixture("grr/" + name));
}

const char* kConfigs[] = {"semistable.cfg", "double_fiber.cfg", "chain.cfg", "crossing.cfg", "adversarial.cfg"};

CycleExpr probes(const BoundaryConfig& cfg, int degree) {
  CycleExpr e(cfg);
  std::function<void(CycleMonomial&, int, int)> rec = [&](CycleMonomial& m, int i, int left) {
    if (i == cfg.num_y()) {
      const IndexSet s = m.support();
      if (cfg.is_stratum(s) && (s & cfg.z_support) != 0) e.add_term(m, Rat(1 + m.y_degree()));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      m.y[i] = k;
      rec(m, i + 1, left - k);
    }
    m.y[i] = 0;
  };
  CycleMonomial m = e.unit();
  m.marker = Marker::cg;
  rec(m, 0, degree);
  return e;
}

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <cli-binary> <work-dir>\n";
    return 2;
  }
  g_cli = argv[1];
  g_work = argv[2];

  criterion(1, "Euler-Bernoulli bridge", 10, [] {
    const auto e = oracle::euler_zero_table(127);
    for (unsigned n = 1; n <= 64; ++n) {
      if (euler_via_bernoulli(n) != euler_number(2 * n - 1)) return "bridge fails at n = " + std::to_string(n);
      if (euler_number(2 * n - 1).raw() != e[2 * n - 1]) return "E_" + std::to_string(2 * n - 1) + " disagrees with the oracle";
    }
    for (unsigned n = 1; n <= 200; ++n)
      if (euler_via_bernoulli(n).is_zero()) return "vanishes at n = " + std::to_string(n);
    return std::string();
  });

  criterion(2, "weight-one lemma certification for g = 1..4", 30, [] {
    const auto e = oracle::euler_zero_table(20);
    for (int g = 1; g <= 4; ++g) {
      const Lemma21Report rep = verify_lemma21(g, 2 * g + 2);
      if (!rep.passed)
        return "g = " + std::to_string(g) + ": " + (rep.failures.empty() ? "not certified" : rep.failures.front());
      for (const auto& [k, r] : rep.odd_residuals)
        if (!r.is_zero()) return "odd residual in degree " + std::to_string(k);
      for (const EvenRatio& r : rep.even_ratios) {
        const mpq_class fact(oracle::factorial(2 * r.n));
        if (r.p_coefficient.raw() != -e[2 * r.n - 1] / fact) return "P coefficient n = " + std::to_string(r.n);
        if (r.ch_coefficient.raw() != mpq_class(2) / fact) return "ch coefficient n = " + std::to_string(r.n);
        if (r.lambda.is_zero()) return "lambda vanishes n = " + std::to_string(r.n);
      }
    }
    return std::string();
  });

  criterion(3, "degree-0 constant of the even wedge product is 2^{2g}", 10, [] {
    for (int g = 1; g <= 4; ++g) {
      const RelationReport rel = first_relation_rewrite(g, 2 * g + 2);
      std::vector<std::vector<long>> roots;
      for (const auto& r : KClass::hodge_pair(g).expanded_roots()) roots.push_back(r);
      mpq_class oracle_constant = 0;
      for (int k = 0; k <= 2 * g; ++k) {
        const auto p = oracle::elementary_of_exponentials(roots, k, 0);
        if (!p.empty()) oracle_constant += p.begin()->second;
      }
      if (rel.degree_zero != power_of_two(2 * g) || rel.degree_zero.raw() != oracle_constant)
        return "g = " + std::to_string(g) + ": got " + rel.degree_zero.str();
    }
    return std::string();
  });

  criterion(4, "lambda-product identity for g <= 3, D <= 8", 60, [] {
    for (int g = 1; g <= 3; ++g) {
      const LambdaProductReport rep = verify_lambda_product(g, 8);
      if (!rep.passed) return "g = " + std::to_string(g) + " routes disagree";
      const auto roots = KClass::hodge_pair(g).expanded_roots();
      for (int k = 0; k <= 2 * g; ++k)
        if (testsupport::to_poly(rep.wedge_route.at(k)) != oracle::elementary_of_exponentials(roots, k, 8))
          return "g = " + std::to_string(g) + " t^" + std::to_string(k) + " differs from the oracle";
    }
    return std::string();
  });

  criterion(5, "c_g identity for g = 1..5 at D = 2g+2", 120, [] {
    for (int g = 1; g <= 5; ++g) {
      const IdentityReport rep = verify_cg_identity(g, 2 * g + 2);
      if (!rep.passed) return "g = " + std::to_string(g) + " fails";
    }
    return std::string();
  });

  criterion(6, "GRR ledger certification and delta oracle", 10, [] {
    const GrrCertificate semi = theorem_grr_certify(fixture_config("semistable.cfg"));
    if (!semi.certified || !semi.ledger.empty()) return std::string("semistable fixture");
    for (const char* name : {"double_fiber.cfg", "chain.cfg"}) {
      const GrrCertificate c = theorem_grr_certify(fixture_config(name));
      if (!c.certified || c.ledger.empty()) return std::string(name);
    }
    const GrrCertificate adv = theorem_grr_certify(fixture_config("adversarial.cfg"));
    if (adv.certified || adv.validation_problems.empty()) return std::string("adversarial fixture accepted");
    for (const char* name : kConfigs) {
      const BoundaryConfig cfg = fixture_config(name);
      for (IndexSet s = 1; s < (IndexSet{1} << cfg.num_y()); ++s) {
        if (!cfg.is_stratum(s)) continue;
        std::vector<std::vector<mpz_class>> m;
        for (int i : members(s)) {
          std::vector<mpz_class> row;
          for (int j : members(cfg.j_of(s))) row.emplace_back(cfg.nu[i][j]);
          m.push_back(row);
        }
        if (delta(s, cfg) != set_size(s) - oracle::rank_by_minors(m))
          return std::string(name) + " " + cfg.format_y_set(s);
      }
    }
    return std::string();
  });

  criterion(7, "rewriting round trips and confluence over 128 seeds", 60, [] {
    int substitutions = 0;
    for (const char* name : kConfigs) {
      const BoundaryConfig cfg = fixture_config(name);
      if (cfg.z_support == 0) continue;
      const CycleExpr e = probes(cfg, cfg.base_dim + cfg.fiber_dim);
      const ReduceResult base = reduce(e, cfg);
      for (const RewriteStep& s : base.steps) {
        if (!s.substitution) continue;
        ++substitutions;
        if (!substitution_round_trips(*s.substitution, cfg)) return std::string(name) + ": round trip fails";
      }
      if (!base.all_round_trips_ok) return std::string(name) + ": round trip fails";
      for (std::uint64_t seed = 1; seed <= 128; ++seed) {
        const ReduceResult r = reduce(e, cfg, ReduceOptions{seed});
        if (!r.all_round_trips_ok) return std::string(name) + ": round trip fails";
        if (r.normal_form != base.normal_form) return std::string(name) + ": seed " + std::to_string(seed) + " differs";
      }
    }
    if (substitutions == 0) return std::string("no substitution was exercised");
    return std::string();
  });

  criterion(8, "cone module", 10, [] {
    for (const auto& entry : fs::directory_iterator(testsupport::fixture("cones"))) {
      const Cone c = load_cone(entry.path().string());
      std::vector<std::vector<mpz_class>> m;
      for (const BPoint& v : c.generators) m.push_back(flatten(v));
      if (is_smooth(c, LatticeContext(c.g)) != (oracle::gcd_of_maximal_minors(m) == 1))
        return "smoothness of " + entry.path().filename().string();
    }
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> v(-5, 5);
    for (int i = 0; i < 1000; ++i) {
      const int g = 1 + i % 4;
      BPoint p{IntMatrix(g, IntVector(g)), IntVector(g)};
      for (int a = 0; a < g; ++a) {
        for (int b = a; b < g; ++b) p.b[a][b] = p.b[b][a] = v(rng);
        p.l[a] = v(rng);
      }
      AffineElement minus = identity_element(g);
      for (int a = 0; a < g; ++a) minus.gamma[a][a] = -1;
      const BPoint once = act(minus, p);
      if (act(minus, once) != p || once.b != p.b) return std::string("involution sample ") + std::to_string(i);
    }
    for (const char* name : {"g1_unit.cone", "g2_pass.cone"}) {
      const Cone c = load_cone(testsupport::fixture(std::string("cones/") + name));
      const LatticeContext ctx(c.g);
      const auto w = find_invariance_witness(c, ctx, default_witness_bound(c));
      if (!w || fixed_stratum_check(c, *w, ctx).status != FixedStratumStatus::smooth_locus)
        return std::string(name) + " does not pass";
    }
    for (const char* name : {"g1_odd.cone", "g2_odd.cone"}) {
      const Cone c = load_cone(testsupport::fixture(std::string("cones/") + name));
      const LatticeContext ctx(c.g);
      const auto w = find_invariance_witness(c, ctx, default_witness_bound(c));
      if (!w || fixed_stratum_check(c, *w, ctx).status != FixedStratumStatus::hypothesis_violation)
        return std::string(name) + " not flagged";
    }
    return std::string();
  });

  criterion(9, "verify-all exits 0 and its report is byte-stable", 300, [] {
    std::string first;
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = fs::path(g_work) / ("acceptance-run" + std::to_string(run));
      fs::remove_all(dir);
      const std::string cmd = "CHERNVAN_OUT_DIR='" + dir.string() + "' '" + g_cli + "' verify-all > /dev/null";
      const int rc = std::system(cmd.c_str());
      if (rc != 0) return "verify-all exit status " + std::to_string(rc);
      const std::string report = read(dir / "verify-all.json");
      if (report.empty()) return std::string("no report written");
      if (run == 0) first = report;
      else if (report != first) return std::string("reports differ between runs");
    }
    return std::string();
  });

  std::printf("ACCEPTANCE: %s\n", g_all ? "PASS" : "FAIL");
  return g_all ? 0 : 1;
}
