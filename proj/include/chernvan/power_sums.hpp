#pragma once

#include <map>
#include <string>
#include <vector>

#include "chernvan/graded_series.hpp"

namespace chernvan {

// Weakly decreasing positive parts.
using Partition = std::vector<int>;

std::vector<Partition> partitions(int n, int max_part, int max_parts);

// Q-linear combination of power-sum monomials p_lambda = p_{l1} p_{l2} ...
// The empty partition is the constant 1.
class PowerSumExpr {
 public:
  PowerSumExpr() = default;

  static PowerSumExpr single(const Partition& lambda, const Rat& c = Rat(1));

  const std::map<Partition, Rat>& terms() const { return terms_; }
  void add_term(Partition lambda, const Rat& c);
  Rat coefficient(const Partition& lambda) const;
  bool is_zero() const { return terms_.empty(); }
  // Largest |lambda| among the terms, -1 if zero.
  int max_weight() const;

  PowerSumExpr& operator+=(const PowerSumExpr& o);
  friend bool operator==(const PowerSumExpr&, const PowerSumExpr&) = default;

  // "1/4 * p2 + -1/2 * p1^2"; "0" when empty.
  std::string str() const;

 private:
  std::map<Partition, Rat> terms_;
};

// Canonical rewrite of a symmetric series in the basis {p_lambda : every part
// <= g}, which is a basis of the symmetric polynomials in g variables because
// p_1..p_g are algebraically independent and generate. Power sums p_k with
// k > g are therefore re-expressed through Newton's relations; the round trip
// to_power_sums(from_power_sums(x)) == x holds exactly when every part of x is
// <= g. Throws std::invalid_argument on non-symmetric input.
PowerSumExpr to_power_sums(const GradedSeries& s);

GradedSeries from_power_sums(const PowerSumExpr& expr, int num_vars, int trunc_degree);

}  // namespace chernvan
