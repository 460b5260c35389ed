#include "chernvan/power_sums.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace chernvan {
namespace {

void partitions_rec(int remaining, int max_part, int max_parts, Partition& current,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  if (static_cast<int>(current.size()) == max_parts) return;
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    current.push_back(p);
    partitions_rec(remaining - p, p, max_parts, current, out);
    current.pop_back();
  }
}

// Solve A x = b exactly; A square and invertible.
std::vector<Rat> solve_square(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw std::logic_error("power-sum change of basis is singular");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const Rat inv = a[col][col].inverse();
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const Rat f = a[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

}  // namespace

std::vector<Partition> partitions(int n, int max_part, int max_parts) {
  std::vector<Partition> out;
  Partition current;
  if (n < 0) return out;
  partitions_rec(n, max_part, max_parts, current, out);
  return out;
}

PowerSumExpr PowerSumExpr::single(const Partition& lambda, const Rat& c) {
  PowerSumExpr e;
  e.add_term(lambda, c);
  return e;
}

void PowerSumExpr::add_term(Partition lambda, const Rat& c) {
  if (std::any_of(lambda.begin(), lambda.end(), [](int p) { return p < 1; }))
    throw std::invalid_argument("PowerSumExpr: partition parts must be positive");
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(std::move(lambda), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rat PowerSumExpr::coefficient(const Partition& lambda) const {
  auto it = terms_.find(lambda);
  return it == terms_.end() ? Rat() : it->second;
}

int PowerSumExpr::max_weight() const {
  int w = -1;
  for (const auto& [p, c] : terms_) {
    int s = 0;
    for (int x : p) s += x;
    w = std::max(w, s);
  }
  return w;
}

PowerSumExpr& PowerSumExpr::operator+=(const PowerSumExpr& o) {
  for (const auto& [p, c] : o.terms_) add_term(p, c);
  return *this;
}

std::string PowerSumExpr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str() << " * ";
    if (p.empty()) {
      os << "1";
      continue;
    }
    // p = (4, 2, 2) renders as p4*p2^2
    bool first_factor = true;
    for (std::size_t i = 0; i < p.size();) {
      std::size_t j = i;
      while (j < p.size() && p[j] == p[i]) ++j;
      if (!first_factor) os << "*";
      first_factor = false;
      os << "p" << p[i];
      if (j - i > 1) os << "^" << (j - i);
      i = j;
    }
  }
  return os.str();
}

GradedSeries from_power_sums(const PowerSumExpr& expr, int num_vars, int trunc_degree) {
  GradedSeries out(num_vars, trunc_degree);
  for (const auto& [lambda, c] : expr.terms()) {
    GradedSeries term = GradedSeries::constant(num_vars, trunc_degree, c);
    for (int part : lambda) term = term * GradedSeries::power_sum(num_vars, trunc_degree, part);
    out += term;
  }
  return out;
}

PowerSumExpr to_power_sums(const GradedSeries& s) {
  if (!s.is_symmetric()) throw std::invalid_argument("to_power_sums: series is not symmetric");
  const int g = s.num_vars();
  const int D = s.trunc_degree();
  PowerSumExpr out;
  for (int k = 0; k <= D; ++k) {
    const GradedSeries piece = s.grade_component(k);
    if (piece.is_zero()) continue;
    // Coordinates in the monomial symmetric basis: lambda with <= g parts.
    const std::vector<Partition> mono = partitions(k, k, g);
    // Target basis: mu with parts <= g. Same cardinality by conjugation.
    const std::vector<Partition> basis = partitions(k, g, k);
    if (mono.size() != basis.size()) throw std::logic_error("to_power_sums: basis size mismatch");
    auto key = [g](const Partition& lambda) {
      Exponents e(g, 0);
      for (std::size_t i = 0; i < lambda.size(); ++i) e[i] = lambda[i];
      return e;
    };
    const std::size_t n = mono.size();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (std::size_t col = 0; col < n; ++col) {
      const GradedSeries p = from_power_sums(PowerSumExpr::single(basis[col]), g, k);
      for (std::size_t row = 0; row < n; ++row) a[row][col] = p.coefficient(key(mono[row]));
    }
    std::vector<Rat> rhs(n);
    for (std::size_t row = 0; row < n; ++row) rhs[row] = piece.coefficient(key(mono[row]));
    const std::vector<Rat> x = solve_square(std::move(a), std::move(rhs));
    for (std::size_t col = 0; col < n; ++col) out.add_term(basis[col], x[col]);
  }
  return out;
}

}  // namespace chernvan
