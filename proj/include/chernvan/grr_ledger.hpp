#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chernvan/boundary_config.hpp"
#include "chernvan/char_classes.hpp"
#include "chernvan/cycle_expr.hpp"

namespace chernvan {

// |I| - rank of (nu_i^j), i in I, j in J(I): the codimension of the image of
// the pullback map from base boundary classes to the Y_i, i in I.
// Requires I to be a nonempty stratum.
int delta(IndexSet stratum, const BoundaryConfig& cfg);

// Whether the residue onto O_{Y_I} factors through the relative log forms,
// which happens exactly when delta(I) > 0.
bool residue_factors(IndexSet stratum, const BoundaryConfig& cfg);

enum class KillReason { survives, empty_stratum, positive_delta, strata_relation };

// Where a monomial came from. Supports of the O_Y~/O_T~ error terms are also
// annihilated by the intersection relation for |I| >= 2.
enum class KillContext { reduction, err_support };

// Decides whether c_g times the monomial vanishes. Requires the cg marker.
KillReason kill_rule(const CycleMonomial& m, const BoundaryConfig& cfg,
                     KillContext context = KillContext::reduction);

const char* kill_reason_name(KillReason r);

// Y_i . Y_I = f^*(Gamma) . Y_I + sum_l beta_l Y_{I + l}, Gamma = sum_j gamma_j T_j.
struct Substitution {
  int index = 0;
  IndexSet stratum = 0;
  std::vector<Rat> gamma;                       // over all T components, zero outside J(I)
  std::vector<std::pair<int, Rat>> beta;        // kept terms, l outside I
  std::vector<int> dropped;                     // l with Y_{I + l} empty
  CycleExpr replacement;                        // right-hand side, unmarked
};

// Requires i in I and delta(I) = 0. Underdetermined systems take the gamma
// with the fewest nonzero entries, ties broken by the smallest column indices.
Substitution substitute_rule(int index, IndexSet stratum, const BoundaryConfig& cfg);

// Expands every f^*T_j in the replacement through nu and checks that the
// result equals Y_i . Y_I up to monomials over empty strata.
bool substitution_round_trips(const Substitution& sub, const BoundaryConfig& cfg);

struct RewriteStep {
  CycleMonomial monomial;
  Rat coefficient;
  KillReason killed = KillReason::survives;
  std::optional<Substitution> substitution;
  bool round_trip_ok = true;
};

struct ReduceOptions {
  // When set, the repeated index to substitute is drawn at random from this
  // seed instead of taking the smallest one.
  std::optional<std::uint64_t> shuffle_seed;
};

struct ReduceResult {
  CycleExpr normal_form;
  std::vector<RewriteStep> steps;
  // Input monomials that do not meet the Z support; returned unchanged.
  std::vector<CycleMonomial> untouched;
  int rounds = 0;
  bool all_round_trips_ok = true;
};

// Rewrites c_g-monomials meeting Z into c_g . f^*(...) . Y_I with I a nonempty
// stratum, delta(I) = 0. Throws std::invalid_argument on monomials without the
// cg marker and std::runtime_error when the iteration cap
// |I| * (base_dim + fiber_dim) is exceeded.
ReduceResult reduce(const CycleExpr& expr, const BoundaryConfig& cfg, ReduceOptions options = {});

struct PushforwardCertificate {
  bool vanishes = true;
  ReduceResult reduction;
  std::vector<std::string> fates;
  std::optional<std::string> witness;
};

// Requires every monomial to carry cg and meet the Z support.
PushforwardCertificate pushforward_vanishes(const CycleExpr& expr, const BoundaryConfig& cfg);

enum class CorrectionOrigin { err, ext_c, v, w, n_term };
const char* origin_name(CorrectionOrigin o);

struct CorrectionTerm {
  CorrectionOrigin origin;
  int family = -1;  // j for v and w, i for N(i), -1 otherwise
  IndexSet support = 0;
  bool certified = false;
  std::string path;  // how the term is annihilated
};

struct AuditReport {
  bool passed = true;
  // Supports of the error term from O_Y~/O_T~, disposed of before the
  // correction sheaf C enters.
  std::vector<CorrectionTerm> err_terms;
  // Terms coming from Todd(Ext(C)): v_j, w_j, N(i) and the aggregate ext-C.
  std::vector<CorrectionTerm> correction_terms;
  std::vector<std::string> counterexamples;
};

AuditReport correction_support_audit(const BoundaryConfig& cfg);

// "v_T1 support {Y2}: <annihilation path>"
std::string describe_term(const CorrectionTerm& t, const BoundaryConfig& cfg);

struct GrrCertificate {
  bool certified = false;
  std::vector<std::string> validation_problems;
  std::optional<IdentityReport> cg_identity;
  std::optional<AuditReport> audit;
  std::vector<std::string> ledger;
};

// Validates the configuration, then composes the c_g identity, the support
// audit and the pushforward vanishing.
GrrCertificate theorem_grr_certify(const BoundaryConfig& cfg);

}  // namespace chernvan
