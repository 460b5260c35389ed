#include "chernvan/char_classes.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "chernvan/numbers.hpp"

namespace chernvan {
namespace {

void require_effective(const KClass& k, const char* op) {
  if (!k.effective()) throw std::invalid_argument(std::string(op) + ": virtual class");
}

GradedSeries root_series(const RootForm& root, int trunc_degree) {
  return GradedSeries::linear_form(static_cast<int>(root.size()), trunc_degree, root);
}

bool is_zero_form(const RootForm& r) {
  return std::all_of(r.begin(), r.end(), [](long c) { return c == 0; });
}

// Enumerate every k-subset of `roots` and record the sum of its elements.
void subset_sums(const std::vector<RootForm>& roots, std::size_t start, int remaining,
                 RootForm& acc, KClass& out) {
  if (remaining == 0) {
    out.add_root(acc, 1);
    return;
  }
  for (std::size_t i = start; i + remaining <= roots.size(); ++i) {
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += roots[i][c];
    subset_sums(roots, i + 1, remaining - 1, acc, out);
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] -= roots[i][c];
  }
}

}  // namespace

KClass::KClass(int num_vars) : num_vars_(num_vars) {
  if (num_vars < 1) throw std::invalid_argument("KClass: num_vars must be >= 1");
}

KClass KClass::trivial_line(int num_vars) {
  KClass k(num_vars);
  k.add_root(RootForm(num_vars, 0), 1);
  return k;
}

KClass KClass::line(RootForm root, long multiplicity) {
  KClass k(static_cast<int>(root.size()));
  k.add_root(root, multiplicity);
  return k;
}

KClass KClass::generic(int num_vars) {
  KClass k(num_vars);
  for (int i = 0; i < num_vars; ++i) {
    RootForm r(num_vars, 0);
    r[i] = 1;
    k.add_root(r, 1);
  }
  return k;
}

KClass KClass::hodge_pair(int num_vars) {
  const KClass e = generic(num_vars);
  return e + e.dual();
}

std::vector<RootForm> KClass::expanded_roots() const {
  require_effective(*this, "expanded_roots");
  std::vector<RootForm> out;
  for (const auto& [r, m] : roots_)
    for (long i = 0; i < m; ++i) out.push_back(r);
  return out;
}

void KClass::add_root(const RootForm& root, long multiplicity) {
  if (static_cast<int>(root.size()) != num_vars_)
    throw std::invalid_argument("KClass::add_root: root length mismatch");
  if (multiplicity == 0) return;
  auto [it, inserted] = roots_.try_emplace(root, multiplicity);
  if (!inserted) {
    it->second += multiplicity;
    if (it->second == 0) roots_.erase(it);
  }
}

long KClass::rank() const {
  long r = 0;
  for (const auto& [root, m] : roots_) r += m;
  return r;
}

bool KClass::effective() const {
  return std::all_of(roots_.begin(), roots_.end(), [](const auto& kv) { return kv.second > 0; });
}

KClass KClass::dual() const {
  KClass out(num_vars_);
  for (const auto& [r, m] : roots_) {
    RootForm neg = r;
    for (long& c : neg) c = -c;
    out.add_root(neg, m);
  }
  return out;
}

KClass& KClass::operator+=(const KClass& o) {
  if (o.num_vars_ != num_vars_) throw std::invalid_argument("KClass: num_vars mismatch");
  for (const auto& [r, m] : o.roots_) add_root(r, m);
  return *this;
}

KClass tensor(const KClass& a, const KClass& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("KClass: num_vars mismatch");
  KClass out(a.num_vars_);
  for (const auto& [ra, ma] : a.roots_)
    for (const auto& [rb, mb] : b.roots_) {
      RootForm s(ra.size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = ra[i] + rb[i];
      out.add_root(s, ma * mb);
    }
  return out;
}

GradedSeries ch(const KClass& k, int trunc_degree) {
  GradedSeries out(k.num_vars(), trunc_degree);
  for (const auto& [r, m] : k.roots())
    out += exp_series(root_series(r, trunc_degree)) * Rat(m);
  return out;
}

KClass lambda_power(const KClass& k, int power) {
  require_effective(k, "lambda_power");
  if (power < 0) throw std::invalid_argument("lambda_power: negative power");
  KClass out(k.num_vars());
  const std::vector<RootForm> roots = k.expanded_roots();
  if (power > static_cast<int>(roots.size())) return out;
  RootForm acc(k.num_vars(), 0);
  subset_sums(roots, 0, power, acc, out);
  return out;
}

std::vector<GradedSeries> lambda_t_ch(const KClass& k, int trunc_degree) {
  require_effective(k, "lambda_t_ch");
  std::vector<GradedSeries> out;
  for (long p = 0; p <= k.rank(); ++p)
    out.push_back(ch(lambda_power(k, static_cast<int>(p)), trunc_degree));
  return out;
}

std::vector<GradedSeries> lambda_t_product(const KClass& k, int trunc_degree) {
  require_effective(k, "lambda_t_product");
  const int g = k.num_vars();
  std::vector<GradedSeries> poly{GradedSeries::constant(g, trunc_degree, Rat(1))};
  for (const RootForm& r : k.expanded_roots()) {
    const GradedSeries e = exp_series(root_series(r, trunc_degree));
    std::vector<GradedSeries> next(poly.size() + 1, GradedSeries(g, trunc_degree));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] += poly[i] * e;
    }
    poly = std::move(next);
  }
  return poly;
}

GradedSeries lambda_pm1_ch(const KClass& k, int sign, int trunc_degree) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("lambda_pm1_ch: sign must be +-1");
  require_effective(k, "lambda_pm1_ch");
  GradedSeries out(k.num_vars(), trunc_degree);
  const std::vector<GradedSeries> coeffs = lambda_t_ch(k, trunc_degree);
  for (std::size_t p = 0; p < coeffs.size(); ++p)
    out += (sign == -1 && p % 2 == 1) ? -coeffs[p] : coeffs[p];
  return out;
}

std::vector<Rat> todd_series_coefficients(int trunc_degree) {
  // x/(1 - e^-x) = sum B_n (-x)^n / n! with B_1 = -1/2.
  std::vector<Rat> q;
  for (int n = 0; n <= trunc_degree; ++n) {
    Rat c = bernoulli(static_cast<unsigned>(n)) / factorial(static_cast<unsigned>(n));
    q.push_back(n % 2 == 1 ? -c : c);
  }
  return q;
}

GradedSeries todd(const KClass& k, int trunc_degree) {
  const int g = k.num_vars();
  const std::vector<Rat> q = todd_series_coefficients(trunc_degree);
  GradedSeries out = GradedSeries::constant(g, trunc_degree, Rat(1));
  for (const auto& [r, m] : k.roots()) {
    if (is_zero_form(r)) continue;
    GradedSeries factor = root_series(r, trunc_degree).substitute_into(q);
    if (m < 0) factor = factor.inverse();
    out = out * factor.pow(static_cast<unsigned>(m < 0 ? -m : m));
  }
  return out;
}

GradedSeries chern_class(const KClass& k, int index, int trunc_degree) {
  require_effective(k, "chern_class");
  if (index < 0) throw std::invalid_argument("chern_class: negative index");
  if (index > trunc_degree)
    throw std::invalid_argument("chern_class: index " + std::to_string(index) +
                                " exceeds truncation degree " + std::to_string(trunc_degree));
  // c(K) = prod (1 + root); c_k is its degree-k piece.
  GradedSeries total = GradedSeries::constant(k.num_vars(), trunc_degree, Rat(1));
  for (const RootForm& r : k.expanded_roots()) {
    GradedSeries factor = root_series(r, trunc_degree);
    factor.add_term(Exponents(k.num_vars(), 0), Rat(1));
    total = total * factor;
  }
  return total.grade_component(index);
}

GradedSeries top_chern_class(const KClass& k, int trunc_degree) {
  return chern_class(k, static_cast<int>(k.rank()), trunc_degree);
}

IdentityReport verify_cg_identity(int num_vars, int trunc_degree) {
  if (num_vars < 1) throw std::invalid_argument("verify_cg_identity: g must be >= 1");
  if (trunc_degree < num_vars) throw std::invalid_argument("verify_cg_identity: need D >= g");
  const KClass forms = KClass::generic(num_vars);
  const KClass tangent = forms.dual();
  const GradedSeries lhs = todd(tangent, trunc_degree) * lambda_pm1_ch(forms, -1, trunc_degree);
  GradedSeries rhs = top_chern_class(forms, trunc_degree);
  if (num_vars % 2 == 1) rhs = -rhs;
  const GradedSeries diff = lhs - rhs;

  IdentityReport report;
  report.num_vars = num_vars;
  report.trunc_degree = trunc_degree;
  for (int d = 0; d <= trunc_degree; ++d) {
    report.residuals.push_back(diff.grade_component(d));
    if (!report.residuals.back().is_zero() && !report.first_failing_degree) {
      report.first_failing_degree = d;
      report.passed = false;
    }
  }
  return report;
}

LambdaProductReport verify_lambda_product(int num_vars, int trunc_degree) {
  const KClass h = KClass::hodge_pair(num_vars);
  LambdaProductReport report;
  report.num_vars = num_vars;
  report.trunc_degree = trunc_degree;
  report.wedge_route = lambda_t_ch(h, trunc_degree);
  report.product_route = lambda_t_product(h, trunc_degree);
  if (report.wedge_route.size() != report.product_route.size()) {
    report.passed = false;
    report.first_failure = std::make_pair(0, 0);
    return report;
  }
  for (std::size_t p = 0; p < report.wedge_route.size() && report.passed; ++p) {
    const GradedSeries diff = report.wedge_route[p] - report.product_route[p];
    for (int d = 0; d <= trunc_degree; ++d)
      if (!diff.grade_component(d).is_zero()) {
        report.passed = false;
        report.first_failure = std::make_pair(static_cast<int>(p), d);
        break;
      }
  }
  return report;
}

}  // namespace chernvan
