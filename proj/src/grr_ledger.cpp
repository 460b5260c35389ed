#include "chernvan/grr_ledger.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "chernvan/linalg.hpp"

namespace chernvan {
namespace {

void require_stratum(IndexSet s, const BoundaryConfig& cfg, const char* op) {
  if (s == 0) throw std::invalid_argument(std::string(op) + ": empty index set");
  if (!cfg.is_stratum(s))
    throw std::invalid_argument(std::string(op) + ": " + cfg.format_y_set(s) +
                                " is not a nonempty stratum");
}

RatMatrix nu_block(IndexSet rows, IndexSet cols, const BoundaryConfig& cfg) {
  RatMatrix m;
  const std::vector<int> cs = members(cols);
  for (int i : members(rows)) {
    std::vector<Rat> row;
    for (int j : cs) row.emplace_back(cfg.nu[i][j]);
    m.push_back(std::move(row));
  }
  return m;
}

CycleMonomial y_monomial(const CycleExpr& shape, IndexSet s) {
  CycleMonomial m = shape.unit();
  for (int i : members(s)) m.y[i] = 1;
  return m;
}

// Replace every f^*T_j by sum_i nu_i^j Y_i.
CycleExpr expand_pullbacks(const CycleExpr& e, const BoundaryConfig& cfg) {
  CycleExpr out(cfg);
  for (const auto& [m, c] : e.terms()) {
    CycleMonomial base = m;
    std::fill(base.t.begin(), base.t.end(), 0);
    CycleExpr acc = CycleExpr::monomial(base, c);
    for (int j = 0; j < cfg.num_t(); ++j) {
      CycleExpr divisor(cfg);
      for (int i = 0; i < cfg.num_y(); ++i) {
        CycleMonomial yi = divisor.unit();
        yi.y[i] = 1;
        divisor.add_term(yi, Rat(cfg.nu[i][j]));
      }
      for (int k = 0; k < m.t[j]; ++k) acc = acc * divisor;
    }
    out += acc;
  }
  return out;
}

// Combinations of `items` of size k in lexicographic order.
void combinations(const std::vector<int>& items, std::size_t k, std::size_t start,
                  std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < items.size(); ++i) {
    cur.push_back(items[i]);
    combinations(items, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

int delta(IndexSet stratum, const BoundaryConfig& cfg) {
  require_stratum(stratum, cfg, "delta");
  const IndexSet js = cfg.j_of(stratum);
  const int r = js == 0 ? 0 : static_cast<int>(rank(nu_block(stratum, js, cfg)));
  const int d = set_size(stratum) - r;
  if (d == 0 && set_size(stratum) > set_size(js))
    throw std::logic_error("delta = 0 with |I| > |J(I)|");
  return d;
}

bool residue_factors(IndexSet stratum, const BoundaryConfig& cfg) {
  return delta(stratum, cfg) > 0;
}

const char* kill_reason_name(KillReason r) {
  switch (r) {
    case KillReason::survives: return "survives";
    case KillReason::empty_stratum: return "empty stratum";
    case KillReason::positive_delta: return "delta > 0";
    case KillReason::strata_relation: return "strata relation";
  }
  return "?";
}

KillReason kill_rule(const CycleMonomial& m, const BoundaryConfig& cfg, KillContext context) {
  if (m.marker != Marker::cg) throw std::invalid_argument("kill_rule: monomial lacks cg");
  const IndexSet s = m.support();
  if (s == 0) return KillReason::survives;
  if (!cfg.is_stratum(s)) return KillReason::empty_stratum;
  if (context == KillContext::err_support && set_size(s) >= 2) return KillReason::strata_relation;
  if (delta(s, cfg) > 0) return KillReason::positive_delta;
  return KillReason::survives;
}

Substitution substitute_rule(int index, IndexSet stratum, const BoundaryConfig& cfg) {
  require_stratum(stratum, cfg, "substitute_rule");
  if (!contains(stratum, index))
    throw std::invalid_argument("substitute_rule: " + cfg.y_names.at(index) + " not in " +
                                cfg.format_y_set(stratum));
  if (delta(stratum, cfg) != 0)
    throw std::invalid_argument("substitute_rule: delta" + cfg.format_y_set(stratum) + " > 0");

  const std::vector<int> rows = members(stratum);
  const std::vector<int> cols = members(cfg.j_of(stratum));
  std::vector<Rat> target;
  for (int i : rows) target.emplace_back(i == index ? 1 : 0);

  std::optional<std::vector<Rat>> gamma;
  for (std::size_t size = 1; size <= cols.size() && !gamma; ++size) {
    std::vector<std::vector<int>> subsets;
    std::vector<int> cur;
    combinations(cols, size, 0, cur, subsets);
    for (const std::vector<int>& subset : subsets) {
      IndexSet sub_cols = 0;
      for (int j : subset) sub_cols |= singleton(j);
      const auto x = solve_particular(nu_block(stratum, sub_cols, cfg), target, subset.size());
      if (!x) continue;
      gamma.emplace(cfg.num_t());
      for (std::size_t k = 0; k < subset.size(); ++k) (*gamma)[subset[k]] = (*x)[k];
      break;
    }
  }
  if (!gamma)
    throw std::logic_error("substitute_rule: no Gamma for " + cfg.y_names.at(index) + " on " +
                           cfg.format_y_set(stratum) + " although delta = 0");

  Substitution sub{index, stratum, *gamma, {}, {}, CycleExpr(cfg)};
  for (int j = 0; j < cfg.num_t(); ++j) {
    if (sub.gamma[j].is_zero()) continue;
    CycleMonomial m = y_monomial(sub.replacement, stratum);
    m.t[j] = 1;
    sub.replacement.add_term(m, sub.gamma[j]);
  }
  for (int l = 0; l < cfg.num_y(); ++l) {
    if (contains(stratum, l)) continue;
    Rat c;
    for (int j = 0; j < cfg.num_t(); ++j) c += sub.gamma[j] * Rat(cfg.nu[l][j]);
    if (c.is_zero()) continue;
    const IndexSet bigger = stratum | singleton(l);
    if (!cfg.is_stratum(bigger)) {
      sub.dropped.push_back(l);
      continue;
    }
    sub.beta.emplace_back(l, -c);
    sub.replacement.add_term(y_monomial(sub.replacement, bigger), -c);
  }
  return sub;
}

bool substitution_round_trips(const Substitution& sub, const BoundaryConfig& cfg) {
  CycleExpr diff = expand_pullbacks(sub.replacement, cfg);
  CycleMonomial lhs = y_monomial(diff, sub.stratum);
  lhs.y[sub.index] += 1;
  diff.add_term(lhs, Rat(-1));
  return std::all_of(diff.terms().begin(), diff.terms().end(),
                     [&](const auto& kv) { return !cfg.is_stratum(kv.first.support()); });
}

ReduceResult reduce(const CycleExpr& expr, const BoundaryConfig& cfg, ReduceOptions options) {
  ReduceResult result{CycleExpr(cfg), {}, {}, 0, true};
  CycleExpr work(cfg);
  for (const auto& [m, c] : expr.terms()) {
    if (m.marker != Marker::cg)
      throw std::invalid_argument("reduce: every monomial must carry cg, got " +
                                  render_monomial(m, cfg));
    if ((m.support() & cfg.z_support) == 0) {
      result.untouched.push_back(m);
      result.normal_form.add_term(m, c);
    } else {
      work.add_term(m, c);
    }
  }

  std::mt19937_64 rng(options.shuffle_seed.value_or(0));
  const int cap = std::max(1, cfg.num_y() * (cfg.base_dim + cfg.fiber_dim));
  while (!work.is_zero()) {
    if (result.rounds >= cap)
      throw std::runtime_error("reduce: iteration cap " + std::to_string(cap) +
                               " exceeded; remaining expression: " + work.str(cfg));
    ++result.rounds;
    CycleExpr next(cfg);
    for (const auto& [m, c] : work.terms()) {
      RewriteStep step{m, c, kill_rule(m, cfg), std::nullopt, true};
      if (step.killed != KillReason::survives) {
        result.steps.push_back(std::move(step));
        continue;
      }
      std::vector<int> repeated;
      for (int i = 0; i < cfg.num_y(); ++i)
        if (m.y[i] >= 2) repeated.push_back(i);
      if (repeated.empty()) {
        result.normal_form.add_term(m, c);
        continue;
      }
      int pick = repeated.front();
      if (options.shuffle_seed)
        pick = repeated[std::uniform_int_distribution<std::size_t>(0, repeated.size() - 1)(rng)];
      const IndexSet stratum = m.support();
      Substitution sub = substitute_rule(pick, stratum, cfg);
      step.round_trip_ok = substitution_round_trips(sub, cfg);
      result.all_round_trips_ok = result.all_round_trips_ok && step.round_trip_ok;

      // m = Y_pick . Y_I . rest
      CycleMonomial rest = m;
      for (int i : members(stratum)) rest.y[i] -= 1;
      rest.y[pick] -= 1;
      next += sub.replacement * CycleExpr::monomial(rest, c);
      step.substitution = std::move(sub);
      result.steps.push_back(std::move(step));
    }
    work = std::move(next);
  }
  return result;
}

PushforwardCertificate pushforward_vanishes(const CycleExpr& expr, const BoundaryConfig& cfg) {
  for (const auto& [m, c] : expr.terms()) {
    if (m.marker != Marker::cg)
      throw std::invalid_argument("pushforward_vanishes: monomial without cg: " +
                                  render_monomial(m, cfg));
    if ((m.support() & cfg.z_support) == 0)
      throw std::invalid_argument("pushforward_vanishes: monomial does not meet Z: " +
                                  render_monomial(m, cfg));
  }
  PushforwardCertificate cert;
  cert.reduction = reduce(expr, cfg);
  for (const RewriteStep& step : cert.reduction.steps)
    if (step.killed != KillReason::survives)
      cert.fates.push_back(step.coefficient.str() + "*" + render_monomial(step.monomial, cfg) +
                           ": killed (" + kill_reason_name(step.killed) + ")");

  for (const auto& [m, c] : cert.reduction.normal_form.terms()) {
    const IndexSet s = m.support();
    const std::string name = c.str() + "*" + render_monomial(m, cfg);
    // c_g = f^*xi + W; W . Y_i = 0 for i in Z.
    if ((s & cfg.z_support) == 0) {
      cert.vanishes = false;
      cert.witness = name + ": W-part survives, no Y_i in Z";
      cert.fates.push_back(*cert.witness);
      continue;
    }
    cert.fates.push_back(name + ": W-part killed by W.Y_i = 0 on Z");
    const IndexSet js = cfg.j_of(s);
    if (set_size(s) > set_size(js) || delta(s, cfg) != 0) {
      cert.vanishes = false;
      cert.witness = name + ": xi-part has |I| = " + std::to_string(set_size(s)) +
                     " > |J(I)| = " + std::to_string(set_size(js));
      cert.fates.push_back(*cert.witness);
      continue;
    }
    const int fibre = cfg.fiber_dim + set_size(js) - set_size(s);
    cert.fates.push_back(name + ": xi-part pushes forward to 0 (|I| = " +
                         std::to_string(set_size(s)) + " <= |J(I)| = " +
                         std::to_string(set_size(js)) + ", fibre dimension of Y_I -> T_J = " +
                         std::to_string(fibre) + " >= g = " + std::to_string(cfg.fiber_dim) + ")");
  }
  return cert;
}

const char* origin_name(CorrectionOrigin o) {
  switch (o) {
    case CorrectionOrigin::err: return "err";
    case CorrectionOrigin::ext_c: return "ext-C";
    case CorrectionOrigin::v: return "v";
    case CorrectionOrigin::w: return "w";
    case CorrectionOrigin::n_term: return "N";
  }
  return "?";
}

namespace {

// Annihilation path for c_g times any monomial supported on `support`.
CorrectionTerm certify_support(CorrectionOrigin origin, int family, IndexSet support,
                               const BoundaryConfig& cfg, bool expect_positive_delta) {
  CorrectionTerm term{origin, family, support, false, ""};
  if (!cfg.is_stratum(support)) {
    term.certified = true;
    term.path = "empty stratum";
    return term;
  }
  CycleExpr probe(cfg);
  CycleMonomial m = probe.unit();
  m.marker = Marker::cg;
  for (int i : members(support)) m.y[i] = 1;
  const KillReason reason = kill_rule(
      m, cfg, origin == CorrectionOrigin::err ? KillContext::err_support : KillContext::reduction);
  if (reason != KillReason::survives) {
    term.certified = true;
    term.path = std::string("killed: ") + kill_reason_name(reason);
    if (reason == KillReason::positive_delta)
      term.path += " (delta = " + std::to_string(delta(support, cfg)) + ")";
    return term;
  }
  if (expect_positive_delta) {
    term.path = "support inside Phi_j with delta = 0";
    return term;
  }
  if ((support & cfg.z_support) == 0) {
    term.path = "delta = 0 and the support misses Z";
    return term;
  }
  // Pushforward vanishing on c_g . Y_I and on every degree-one extension c_g . Y_I . Y_i.
  CycleExpr e = CycleExpr::monomial(m);
  for (int i : members(support)) {
    CycleMonomial bumped = m;
    bumped.y[i] += 1;
    e.add_term(bumped, Rat(1));
  }
  const PushforwardCertificate cert = pushforward_vanishes(e, cfg);
  term.certified = cert.vanishes && cert.reduction.all_round_trips_ok;
  term.path = cert.vanishes ? "pushforward vanishes (" + std::to_string(cert.fates.size()) +
                                  " monomial fates; normal form " +
                                  cert.reduction.normal_form.str(cfg) + ")"
                            : "pushforward does not vanish: " + cert.witness.value_or("?");
  return term;
}

}  // namespace

std::string describe_term(const CorrectionTerm& t, const BoundaryConfig& cfg) {
  std::string family;
  if (t.origin == CorrectionOrigin::v || t.origin == CorrectionOrigin::w)
    family = "_" + cfg.t_names.at(t.family);
  else if (t.origin == CorrectionOrigin::n_term)
    family = "(" + cfg.y_names.at(t.family) + ")";
  return std::string(origin_name(t.origin)) + family + " support " + cfg.format_y_set(t.support) +
         ": " + (t.certified ? "" : "NOT CERTIFIED: ") + t.path;
}

AuditReport correction_support_audit(const BoundaryConfig& cfg) {
  AuditReport report;
  auto record = [&](std::vector<CorrectionTerm>& list, CorrectionTerm term) {
    if (!term.certified) {
      report.passed = false;
      report.counterexamples.push_back(describe_term(term, cfg));
    }
    list.push_back(std::move(term));
  };

  for (IndexSet s : cfg.strata)
    if (set_size(s) >= 2)
      record(report.err_terms, certify_support(CorrectionOrigin::err, -1, s, cfg, false));

  // Z empty: the correction sheaf C vanishes and nothing else is produced.
  if (cfg.z_support == 0) return report;

  for (int j = 0; j < cfg.num_t(); ++j) {
    const IndexSet zj = cfg.z_components(j);
    if (zj == 0) continue;
    for (IndexSet s : cfg.strata)
      if ((s & zj) != 0)
        record(report.correction_terms, certify_support(CorrectionOrigin::v, j, s, cfg, false));
  }
  for (int j = 0; j < cfg.num_t(); ++j) {
    const IndexSet reduced = cfg.reduced_components(j);
    const IndexSet phi = cfg.phi_components(j);
    for (IndexSet s : cfg.strata) {
      if (set_size(s) < 2 || (s & ~reduced) != 0) continue;
      const bool inside_phi = (s & ~phi) == 0;
      record(report.correction_terms,
             certify_support(CorrectionOrigin::w, j, s, cfg, inside_phi));
    }
  }
  for (int i = 0; i < cfg.num_y(); ++i) {
    if (cfg.n_of(i) <= 0) continue;
    CorrectionTerm term = certify_support(CorrectionOrigin::n_term, i, singleton(i), cfg, false);
    if (!contains(cfg.z_support, i)) {
      term.certified = false;
      term.path = "N(i) > 0 outside Z";
    }
    record(report.correction_terms, std::move(term));
  }
  for (IndexSet s : cfg.strata)
    if ((s & cfg.z_support) != 0)
      record(report.correction_terms, certify_support(CorrectionOrigin::ext_c, -1, s, cfg, false));
  return report;
}

GrrCertificate theorem_grr_certify(const BoundaryConfig& cfg) {
  GrrCertificate cert;
  cert.validation_problems = validation_problems(cfg);
  if (!cert.validation_problems.empty()) return cert;

  const int g = cfg.fiber_dim;
  cert.cg_identity = verify_cg_identity(g, 2 * g + 2);
  cert.audit = correction_support_audit(cfg);
  for (const CorrectionTerm& t : cert.audit->correction_terms) cert.ledger.push_back(describe_term(t, cfg));
  cert.certified = cert.cg_identity->passed && cert.audit->passed;
  return cert;
}

}  // namespace chernvan
