#pragma once

#include <map>
#include <optional>
#include <vector>

#include "chernvan/graded_series.hpp"

namespace chernvan {

// Integer linear form sum_i c_i a_i, the first Chern class of a line-bundle factor.
using RootForm = std::vector<long>;

// Split K-theory class: a multiset of root forms with integer multiplicities.
// Negative multiplicities describe virtual classes.
class KClass {
 public:
  explicit KClass(int num_vars);

  static KClass zero(int num_vars) { return KClass(num_vars); }
  static KClass trivial_line(int num_vars);
  static KClass line(RootForm root, long multiplicity = 1);
  // E: roots a_1..a_g.
  static KClass generic(int num_vars);
  // H = E + E^dual: roots +-a_i.
  static KClass hodge_pair(int num_vars);

  int num_vars() const { return num_vars_; }
  const std::map<RootForm, long>& roots() const { return roots_; }
  // Roots repeated according to multiplicity; requires an effective class.
  std::vector<RootForm> expanded_roots() const;

  void add_root(const RootForm& root, long multiplicity);
  long rank() const;
  bool effective() const;
  KClass dual() const;

  KClass& operator+=(const KClass& o);
  friend KClass operator+(KClass a, const KClass& b) { return a += b; }
  // Root addition; the line-class tensor product.
  friend KClass tensor(const KClass& a, const KClass& b);
  friend bool operator==(const KClass&, const KClass&) = default;

 private:
  int num_vars_;
  std::map<RootForm, long> roots_;
};

GradedSeries ch(const KClass& k, int trunc_degree);

// Exterior power by direct subset enumeration of the expanded roots.
KClass lambda_power(const KClass& k, int power);

// sum_k sign^k ch(lambda^k K), the Chern character of lambda_t at t = sign.
GradedSeries lambda_pm1_ch(const KClass& k, int sign, int trunc_degree);

// Coefficients in t of sum_k ch(lambda^k K) t^k, by wedge enumeration.
std::vector<GradedSeries> lambda_t_ch(const KClass& k, int trunc_degree);
// Same quantity as prod over roots of (1 + e^root t), by expanding the product.
std::vector<GradedSeries> lambda_t_product(const KClass& k, int trunc_degree);

// Universal coefficients of x / (1 - e^-x).
std::vector<Rat> todd_series_coefficients(int trunc_degree);
GradedSeries todd(const KClass& k, int trunc_degree);

GradedSeries chern_class(const KClass& k, int index, int trunc_degree);
GradedSeries top_chern_class(const KClass& k, int trunc_degree);

struct IdentityReport {
  bool passed = true;
  int num_vars = 0;
  int trunc_degree = 0;
  // residual[d] is the degree-d component of lhs - rhs.
  std::vector<GradedSeries> residuals;
  std::optional<int> first_failing_degree;
};

// todd(F^dual) * sum (-1)^k ch(lambda^k F) == (-1)^g c_g(F) for F of rank g
// with roots a_1..a_g.
IdentityReport verify_cg_identity(int num_vars, int trunc_degree);

// Wedge-enumeration and product routes of lambda_t(H) compared per power of t
// and per degree.
struct LambdaProductReport {
  bool passed = true;
  int num_vars = 0;
  int trunc_degree = 0;
  // (power of t, degree) of the first mismatch.
  std::optional<std::pair<int, int>> first_failure;
  std::vector<GradedSeries> wedge_route;
  std::vector<GradedSeries> product_route;
};
LambdaProductReport verify_lambda_product(int num_vars, int trunc_degree);

}  // namespace chernvan
