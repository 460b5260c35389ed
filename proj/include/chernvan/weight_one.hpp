#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chernvan/graded_series.hpp"
#include "chernvan/power_sums.hpp"

namespace chernvan {

struct WedgeParity {
  GradedSeries even;  // 1/2 (ch lambda_1 H + ch lambda_-1 H)
  GradedSeries odd;   // 1/2 (ch lambda_1 H - ch lambda_-1 H)
};

// Product formula for H = E + E^dual of rank 2g, cross-checked against the
// wedge-sum route. Throws std::logic_error if the routes disagree.
WedgeParity ch_even_odd_wedge(int num_vars, int trunc_degree);

struct RelationReport {
  bool passed = true;
  std::optional<int> first_failing_degree;
  Rat degree_zero;
};

// prod (1 + e^a_i)(1 + e^-a_i) == prod (1 + e^a_i)^2 e^-a_i, with constant 2^{2g}.
RelationReport first_relation_rewrite(int num_vars, int trunc_degree);

// Coefficients psi_1..psi_D of log(1 + e^t) - log 2, by the logarithm of
// (1 + e^t)/2 and independently by integrating 1 - phi(t) with Euler numbers.
// Throws std::logic_error if the two routes disagree.
std::vector<Rat> psi_expansion(int trunc_degree);

struct EvenRatio {
  int n = 0;
  Rat lambda;           // P_{2n} = lambda * ch_{2n}(H)
  Rat p_coefficient;    // P_{2n} = p_coefficient * p_{2n}
  Rat ch_coefficient;   // ch_{2n}(H) = ch_coefficient * p_{2n}
};

struct Lemma21Report {
  int num_vars = 0;
  int trunc_degree = 0;
  // Odd-degree components of P, rewritten in power sums; all expected zero.
  std::vector<std::pair<int, PowerSumExpr>> odd_residuals;
  // Odd-degree components of ch(H); all expected zero.
  std::vector<std::pair<int, PowerSumExpr>> ch_odd_residuals;
  std::vector<EvenRatio> even_ratios;
  bool nonvanishing_certified = false;
  bool passed = false;
  // Constant terms that are removed before the comparison.
  std::string dropped_constant_p;   // "2g*log(2)"
  Rat dropped_rank;                 // rank of H, the degree-0 part of ch(H)
  // Degree-0 part of prod (1 - e^a_i)(1 - e^-a_i); expected 0.
  Rat odd_product_degree_zero;
  std::vector<std::string> failures;
};

Lemma21Report verify_lemma21(int num_vars, int trunc_degree);

}  // namespace chernvan
