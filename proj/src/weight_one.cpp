#include "chernvan/weight_one.hpp"

#include <stdexcept>
#include <string>

#include "chernvan/char_classes.hpp"
#include "chernvan/numbers.hpp"

namespace chernvan {
namespace {

GradedSeries one(int g, int D) { return GradedSeries::constant(g, D, Rat(1)); }

GradedSeries exp_of_var(int g, int D, int i, int sign) {
  return exp_series(GradedSeries::variable(g, D, i) * Rat(sign));
}

// prod_i (1 + s e^a_i)(1 + s e^-a_i), s = +-1
GradedSeries wedge_product(int g, int D, int s) {
  GradedSeries out = one(g, D);
  for (int i = 0; i < g; ++i) {
    GradedSeries plus = one(g, D) + exp_of_var(g, D, i, 1) * Rat(s);
    GradedSeries minus = one(g, D) + exp_of_var(g, D, i, -1) * Rat(s);
    out = out * plus * minus;
  }
  return out;
}

// prod_i (1 + e^a_i)^2 e^-a_i
GradedSeries rewritten_product(int g, int D) {
  GradedSeries out = one(g, D);
  for (int i = 0; i < g; ++i) {
    GradedSeries f = one(g, D) + exp_of_var(g, D, i, 1);
    out = out * f * f * exp_of_var(g, D, i, -1);
  }
  return out;
}

std::optional<int> first_nonzero_degree(const GradedSeries& s) {
  const int d = s.lowest_degree();
  return d < 0 ? std::nullopt : std::optional<int>(d);
}

}  // namespace

WedgeParity ch_even_odd_wedge(int num_vars, int trunc_degree) {
  if (num_vars < 1) throw std::invalid_argument("ch_even_odd_wedge: g must be >= 1");
  const GradedSeries plus = wedge_product(num_vars, trunc_degree, 1);
  const GradedSeries minus = wedge_product(num_vars, trunc_degree, -1);

  const KClass h = KClass::hodge_pair(num_vars);
  if (lambda_pm1_ch(h, 1, trunc_degree) != plus || lambda_pm1_ch(h, -1, trunc_degree) != minus)
    throw std::logic_error("ch_even_odd_wedge: product and wedge-sum routes disagree");

  return {(plus + minus) * Rat(1, 2), (plus - minus) * Rat(1, 2)};
}

RelationReport first_relation_rewrite(int num_vars, int trunc_degree) {
  const GradedSeries lhs = wedge_product(num_vars, trunc_degree, 1);
  const GradedSeries rhs = rewritten_product(num_vars, trunc_degree);
  RelationReport r;
  r.first_failing_degree = first_nonzero_degree(lhs - rhs);
  r.degree_zero = lhs.constant_term();
  r.passed = !r.first_failing_degree && r.degree_zero == power_of_two(2 * num_vars);
  return r;
}

std::vector<Rat> psi_expansion(int trunc_degree) {
  if (trunc_degree < 1) throw std::invalid_argument("psi_expansion: D must be >= 1");
  // Route A: log((1 + e^t)/2) in one variable.
  GradedSeries half = (one(1, trunc_degree) + exp_of_var(1, trunc_degree, 0, 1)) * Rat(1, 2);
  const GradedSeries log_half = log_series(half);
  // Route B: psi' = 1 - phi, phi = 1/2 sum E_n(0) t^n/n!, integrated termwise.
  std::vector<Rat> out;
  for (int k = 1; k <= trunc_degree; ++k) {
    Rat derivative_coeff = -euler_number(k - 1) / (Rat(2) * factorial(k - 1));
    if (k == 1) derivative_coeff += Rat(1);
    const Rat route_b = derivative_coeff / Rat(k);
    const Rat route_a = log_half.coefficient(Exponents{k});
    if (route_a != route_b)
      throw std::logic_error("psi_expansion: routes disagree at degree " + std::to_string(k) +
                             ": " + route_a.str() + " vs " + route_b.str());
    out.push_back(route_b);
  }
  return out;
}

Lemma21Report verify_lemma21(int num_vars, int trunc_degree) {
  if (num_vars < 1) throw std::invalid_argument("verify_lemma21: g must be >= 1");
  if (trunc_degree < 2) throw std::invalid_argument("verify_lemma21: D must be >= 2");
  const int g = num_vars;
  const int D = trunc_degree;
  Lemma21Report report;
  report.num_vars = g;
  report.trunc_degree = D;
  report.dropped_constant_p = std::to_string(2 * g) + "*log(2)";
  report.dropped_rank = Rat(2L * g);

  // P = -p_1 + 2 sum_i psi(a_i), the constant 2g log 2 dropped.
  const std::vector<Rat> psi = psi_expansion(D);
  GradedSeries p_series(g, D);
  for (int i = 0; i < g; ++i) {
    const GradedSeries a = GradedSeries::variable(g, D, i);
    std::vector<Rat> coeffs{Rat(0)};
    for (const Rat& c : psi) coeffs.push_back(c * Rat(2));
    p_series += a.substitute_into(coeffs) - a;
  }
  // Second route: P is the logarithm of the normalized first relation.
  const GradedSeries normalized =
      rewritten_product(g, D) * power_of_two(2 * g).inverse();
  if (log_series(normalized) != p_series)
    report.failures.push_back("P differs from log(prod (1+e^a)^2 e^-a / 2^{2g})");

  const GradedSeries ch_h = ch(KClass::hodge_pair(g), D);
  if (ch_h.constant_term() != report.dropped_rank)
    report.failures.push_back("degree-0 part of ch(H) is not the rank 2g");

  report.odd_product_degree_zero = wedge_product(g, D, -1).constant_term();
  if (!report.odd_product_degree_zero.is_zero())
    report.failures.push_back("odd wedge product has nonzero degree-0 part");

  for (int k = 1; k <= D; k += 2) {
    PowerSumExpr residual = to_power_sums(p_series.grade_component(k));
    if (!residual.is_zero())
      report.failures.push_back("P has nonzero component in odd degree " + std::to_string(k));
    report.odd_residuals.emplace_back(k, std::move(residual));
    PowerSumExpr ch_residual = to_power_sums(ch_h.grade_component(k));
    if (!ch_residual.is_zero())
      report.failures.push_back("ch(H) has nonzero component in odd degree " + std::to_string(k));
    report.ch_odd_residuals.emplace_back(k, std::move(ch_residual));
  }

  bool all_nonzero = true;
  for (int n = 1; 2 * n <= D; ++n) {
    const int deg = 2 * n;
    const GradedSeries p_deg = p_series.grade_component(deg);
    const GradedSeries ch_deg = ch_h.grade_component(deg);
    const GradedSeries power_sum = GradedSeries::power_sum(g, D, deg);

    EvenRatio ratio;
    ratio.n = n;
    ratio.p_coefficient = -euler_number(deg - 1) / factorial(deg);
    ratio.ch_coefficient = Rat(2) / factorial(deg);
    if (p_deg != power_sum * ratio.p_coefficient)
      report.failures.push_back("P_" + std::to_string(deg) + " != (-E_" +
                                std::to_string(deg - 1) + "(0)/(" + std::to_string(deg) +
                                ")!) p_" + std::to_string(deg));
    if (ch_deg != power_sum * ratio.ch_coefficient)
      report.failures.push_back("ch_" + std::to_string(deg) + "(H) != (2/(" +
                                std::to_string(deg) + ")!) p_" + std::to_string(deg));
    ratio.lambda = ratio.p_coefficient / ratio.ch_coefficient;
    if (ratio.lambda != -euler_number(deg - 1) * Rat(1, 2))
      report.failures.push_back("lambda_" + std::to_string(n) + " != -E_" +
                                std::to_string(deg - 1) + "(0)/2");
    // Constructive ideal membership: P_{2n} / lambda_n reproduces ch_{2n}(H).
    if (ratio.lambda.is_zero()) {
      all_nonzero = false;
      report.failures.push_back("lambda_" + std::to_string(n) + " vanishes");
    } else if (p_deg * ratio.lambda.inverse() != ch_deg) {
      report.failures.push_back("P_" + std::to_string(deg) + " / lambda_" + std::to_string(n) +
                                " != ch_" + std::to_string(deg) + "(H)");
    }
    report.even_ratios.push_back(std::move(ratio));
  }
  report.nonvanishing_certified = all_nonzero;
  report.passed = report.failures.empty() && all_nonzero;
  return report;
}

}  // namespace chernvan
