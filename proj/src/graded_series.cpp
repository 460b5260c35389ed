#include "chernvan/graded_series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>

namespace chernvan {

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

std::string render_monomial(const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "a" + std::to_string(i + 1);
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

GradedSeries::GradedSeries(int num_vars, int trunc_degree)
    : num_vars_(num_vars), trunc_degree_(trunc_degree) {
  if (num_vars < 1) throw std::invalid_argument("GradedSeries: num_vars must be >= 1");
  if (trunc_degree < 0) throw std::invalid_argument("GradedSeries: negative truncation degree");
}

GradedSeries GradedSeries::constant(int num_vars, int trunc_degree, const Rat& c) {
  GradedSeries s(num_vars, trunc_degree);
  s.add_term(Exponents(num_vars, 0), c);
  return s;
}

GradedSeries GradedSeries::variable(int num_vars, int trunc_degree, int index) {
  if (index < 0 || index >= num_vars) throw std::out_of_range("GradedSeries::variable");
  GradedSeries s(num_vars, trunc_degree);
  Exponents e(num_vars, 0);
  e[index] = 1;
  s.add_term(e, Rat(1));
  return s;
}

GradedSeries GradedSeries::linear_form(int num_vars, int trunc_degree,
                                       std::span<const long> coeffs) {
  if (static_cast<int>(coeffs.size()) != num_vars)
    throw std::invalid_argument("GradedSeries::linear_form: wrong number of coefficients");
  GradedSeries s(num_vars, trunc_degree);
  for (int i = 0; i < num_vars; ++i) {
    Exponents e(num_vars, 0);
    e[i] = 1;
    s.add_term(e, Rat(coeffs[i]));
  }
  return s;
}

GradedSeries GradedSeries::power_sum(int num_vars, int trunc_degree, int k) {
  GradedSeries s(num_vars, trunc_degree);
  if (k == 0) {
    s.add_term(Exponents(num_vars, 0), Rat(num_vars));
    return s;
  }
  for (int i = 0; i < num_vars; ++i) {
    Exponents e(num_vars, 0);
    e[i] = k;
    s.add_term(e, Rat(1));
  }
  return s;
}

Rat GradedSeries::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat() : it->second;
}

Rat GradedSeries::constant_term() const { return coefficient(Exponents(num_vars_, 0)); }

void GradedSeries::add_term(const Exponents& e, const Rat& c) {
  if (static_cast<int>(e.size()) != num_vars_)
    throw std::invalid_argument("GradedSeries::add_term: exponent length mismatch");
  if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; }))
    throw std::invalid_argument("GradedSeries::add_term: negative exponent");
  if (c.is_zero() || total_degree(e) > trunc_degree_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

GradedSeries GradedSeries::grade_component(int k) const {
  GradedSeries out(num_vars_, trunc_degree_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == k) out.terms_.emplace(e, c);
  return out;
}

int GradedSeries::lowest_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    const int d = total_degree(e);
    if (best < 0 || d < best) best = d;
  }
  return best;
}

void GradedSeries::require_same_shape(const GradedSeries& o, const char* op) const {
  if (!same_shape(o))
    throw std::invalid_argument(std::string("GradedSeries ") + op + ": mismatched (g, D): (" +
                                std::to_string(num_vars_) + ", " + std::to_string(trunc_degree_) +
                                ") vs (" + std::to_string(o.num_vars_) + ", " +
                                std::to_string(o.trunc_degree_) + ")");
}

GradedSeries& GradedSeries::operator+=(const GradedSeries& o) {
  require_same_shape(o, "add");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

GradedSeries& GradedSeries::operator-=(const GradedSeries& o) {
  require_same_shape(o, "sub");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

GradedSeries& GradedSeries::operator*=(const Rat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

GradedSeries GradedSeries::operator-() const {
  GradedSeries out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
  a.require_same_shape(b, "mul");
  const int g = a.num_vars_;
  const int D = a.trunc_degree_;
  // Bucket the right factor by degree so the inner loop stops at D.
  std::vector<std::tuple<int, const Exponents*, const Rat*>> right;
  right.reserve(b.terms_.size());
  for (const auto& [e, c] : b.terms_) right.emplace_back(total_degree(e), &e, &c);
  std::stable_sort(right.begin(), right.end(),
                   [](const auto& x, const auto& y) { return std::get<0>(x) < std::get<0>(y); });

  GradedSeries out(g, D);
  Exponents prod(g, 0);
  for (const auto& [ea, ca] : a.terms_) {
    const int da = total_degree(ea);
    for (const auto& [db, eb, cb] : right) {
      if (da + db > D) break;
      for (int i = 0; i < g; ++i) prod[i] = ea[i] + (*eb)[i];
      out.add_term(prod, ca * *cb);
    }
  }
  return out;
}

GradedSeries GradedSeries::pow(unsigned n) const {
  GradedSeries result = constant(num_vars_, trunc_degree_, Rat(1));
  GradedSeries base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

GradedSeries GradedSeries::inverse() const {
  const Rat c0 = constant_term();
  if (c0.is_zero()) throw std::domain_error("GradedSeries::inverse: zero constant term");
  // s = c0 (1 + u), 1/s = (1/c0) sum (-u)^k
  GradedSeries u = *this * c0.inverse();
  u.add_term(Exponents(num_vars_, 0), Rat(-1));
  std::vector<Rat> geometric;
  for (int k = 0; k <= trunc_degree_; ++k) geometric.emplace_back(k % 2 == 0 ? 1 : -1);
  return u.substitute_into(geometric) * c0.inverse();
}

GradedSeries GradedSeries::substitute_into(std::span<const Rat> coeffs) const {
  GradedSeries out(num_vars_, trunc_degree_);
  if (coeffs.empty()) return out;
  if (coeffs.size() > 1 && !constant_term().is_zero())
    throw std::domain_error("GradedSeries::substitute_into: nonzero constant term");
  // Horner; powers above trunc_degree vanish because the constant term is zero.
  const std::size_t top = std::min<std::size_t>(coeffs.size() - 1, trunc_degree_);
  out = constant(num_vars_, trunc_degree_, coeffs[top]);
  for (std::size_t k = top; k-- > 0;) {
    out = out * *this;
    out.add_term(Exponents(num_vars_, 0), coeffs[k]);
  }
  return out;
}

GradedSeries GradedSeries::truncated(int trunc_degree) const {
  if (trunc_degree > trunc_degree_)
    throw std::invalid_argument("GradedSeries::truncated: cannot raise truncation degree");
  GradedSeries out(num_vars_, trunc_degree);
  for (const auto& [e, c] : terms_) out.add_term(e, c);
  return out;
}

GradedSeries GradedSeries::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != num_vars_)
    throw std::invalid_argument("GradedSeries::permuted: wrong permutation length");
  GradedSeries out(num_vars_, trunc_degree_);
  Exponents moved(num_vars_, 0);
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < num_vars_; ++i) moved[perm[i]] = e[i];
    out.add_term(moved, c);
  }
  return out;
}

GradedSeries GradedSeries::reflected() const {
  GradedSeries out = *this;
  for (auto& [e, c] : out.terms_)
    if (total_degree(e) % 2 == 1) c = -c;
  return out;
}

bool GradedSeries::is_symmetric() const {
  // Adjacent transpositions generate the symmetric group.
  std::vector<int> perm(num_vars_);
  for (int i = 0; i + 1 < num_vars_; ++i) {
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[i], perm[i + 1]);
    if (permuted(perm) != *this) return false;
  }
  return true;
}

std::string GradedSeries::render() const {
  std::vector<std::pair<int, const Exponents*>> order;
  for (const auto& [e, c] : terms_) order.emplace_back(total_degree(e), &e);
  std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first < y.first : *x.second > *y.second;
  });
  std::ostringstream os;
  for (const auto& [d, e] : order) os << terms_.at(*e).str() << " * " << render_monomial(*e) << "\n";
  if (order.empty()) os << "0\n";
  return os.str();
}

GradedSeries exp_series(const GradedSeries& s) {
  if (!s.constant_term().is_zero())
    throw std::domain_error("exp_series: argument has nonzero constant term");
  std::vector<Rat> coeffs;
  for (int k = 0; k <= s.trunc_degree(); ++k) coeffs.push_back(factorial(k).inverse());
  return s.substitute_into(coeffs);
}

GradedSeries log_series(const GradedSeries& s) {
  if (s.constant_term() != Rat(1))
    throw std::domain_error("log_series: constant term must be 1");
  GradedSeries u = s;
  u.add_term(Exponents(s.num_vars(), 0), Rat(-1));
  std::vector<Rat> coeffs{Rat(0)};
  for (int k = 1; k <= s.trunc_degree(); ++k) coeffs.push_back(Rat(k % 2 == 1 ? 1 : -1, k));
  return u.substitute_into(coeffs);
}

}  // namespace chernvan
