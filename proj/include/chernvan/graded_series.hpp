#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "chernvan/rational.hpp"

namespace chernvan {

using Exponents = std::vector<int>;

int total_degree(const Exponents& e);

// Truncated power series over Q in the Chern roots a_1..a_g, graded by total
// degree. Terms of degree > trunc_degree and zero coefficients are never stored.
// Series with different (num_vars, trunc_degree) do not combine.
class GradedSeries {
 public:
  GradedSeries(int num_vars, int trunc_degree);

  static GradedSeries constant(int num_vars, int trunc_degree, const Rat& c);
  // a_{index + 1}
  static GradedSeries variable(int num_vars, int trunc_degree, int index);
  // sum_i coeffs[i] a_{i+1}
  static GradedSeries linear_form(int num_vars, int trunc_degree, std::span<const long> coeffs);
  // p_k = sum_i a_i^k
  static GradedSeries power_sum(int num_vars, int trunc_degree, int k);

  int num_vars() const { return num_vars_; }
  int trunc_degree() const { return trunc_degree_; }
  const std::map<Exponents, Rat>& terms() const { return terms_; }

  Rat coefficient(const Exponents& e) const;
  Rat constant_term() const;
  void add_term(const Exponents& e, const Rat& c);

  GradedSeries grade_component(int k) const;
  bool is_zero() const { return terms_.empty(); }
  // Lowest degree carrying a nonzero term, or -1 for the zero series.
  int lowest_degree() const;
  bool same_shape(const GradedSeries& o) const {
    return num_vars_ == o.num_vars_ && trunc_degree_ == o.trunc_degree_;
  }

  GradedSeries& operator+=(const GradedSeries& o);
  GradedSeries& operator-=(const GradedSeries& o);
  GradedSeries& operator*=(const Rat& c);
  friend GradedSeries operator+(GradedSeries a, const GradedSeries& b) { return a += b; }
  friend GradedSeries operator-(GradedSeries a, const GradedSeries& b) { return a -= b; }
  friend GradedSeries operator*(GradedSeries a, const Rat& c) { return a *= c; }
  friend GradedSeries operator*(const Rat& c, GradedSeries a) { return a *= c; }
  friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b);
  GradedSeries operator-() const;
  friend bool operator==(const GradedSeries& a, const GradedSeries& b) = default;

  GradedSeries pow(unsigned n) const;
  // Multiplicative inverse; requires a nonzero constant term.
  GradedSeries inverse() const;
  // sum_k coeffs[k] s^k for s = *this; requires zero constant term when coeffs
  // has more than one entry.
  GradedSeries substitute_into(std::span<const Rat> coeffs) const;
  // Re-truncate to a smaller degree.
  GradedSeries truncated(int trunc_degree) const;
  // Variable i is sent to variable perm[i].
  GradedSeries permuted(std::span<const int> perm) const;
  // a_i -> -a_i: negates odd-degree components.
  GradedSeries reflected() const;
  bool is_symmetric() const;

  // One "coeff * a1^e1*a2^e2" line per term, sorted by degree then exponents.
  std::string render() const;

 private:
  void require_same_shape(const GradedSeries& o, const char* op) const;

  int num_vars_;
  int trunc_degree_;
  std::map<Exponents, Rat> terms_;
};

GradedSeries exp_series(const GradedSeries& s);
GradedSeries log_series(const GradedSeries& s);

// Renders a monomial as "a1^2*a3"; "1" for the empty monomial.
std::string render_monomial(const Exponents& e);

}  // namespace chernvan
