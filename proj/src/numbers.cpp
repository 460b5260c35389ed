#include "chernvan/numbers.hpp"

#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace chernvan {
namespace {

// Append-only memo tables; entries are never modified once written.
struct Table {
  std::mutex mutex;
  std::vector<Rat> values;
};

Table& bernoulli_table() {
  static Table table;
  return table;
}

Table& euler_table() {
  static Table table;
  return table;
}

// (1 + e^t)/2 = 1 + sum_{k>=1} t^k / (2 k!); its inverse is sum E_n(0) t^n / n!.
// The table stores the inverse's raw coefficients c_n, so E_n(0) = n! c_n.
void extend_euler(std::vector<Rat>& c, unsigned n) {
  if (c.empty()) c.emplace_back(1);
  std::vector<Rat> half_exp;  // a_k = 1/(2 k!)
  half_exp.reserve(n + 1);
  half_exp.emplace_back(1);
  for (unsigned k = 1; k <= n; ++k) half_exp.push_back(Rat(1, 2) / factorial(k));
  for (unsigned m = static_cast<unsigned>(c.size()); m <= n; ++m) {
    Rat acc;
    for (unsigned k = 1; k <= m; ++k) acc -= half_exp[k] * c[m - k];
    c.push_back(acc);
  }
}

}  // namespace

Rat bernoulli(unsigned n) {
  Table& t = bernoulli_table();
  std::lock_guard lock(t.mutex);
  auto& b = t.values;
  if (b.empty()) b.emplace_back(1);
  // sum_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1.
  for (unsigned m = static_cast<unsigned>(b.size()); m <= n; ++m) {
    Rat acc;
    for (unsigned k = 0; k < m; ++k) {
      if (b[k].is_zero()) continue;
      acc += Rat(binomial(m + 1, k)) * b[k];
    }
    b.push_back(-acc / Rat(static_cast<long>(m) + 1));
  }
  return b[n];
}

Rat euler_number(unsigned n) {
  Table& t = euler_table();
  std::lock_guard lock(t.mutex);
  if (t.values.size() <= n) extend_euler(t.values, n);
  return t.values[n] * factorial(n);
}

Rat euler_via_bernoulli(unsigned n) {
  if (n == 0) throw std::invalid_argument("euler_via_bernoulli: n must be >= 1");
  const Rat value = Rat(2) * (Rat(1) - power_of_two(2 * n)) / Rat(2L * n) * bernoulli(2 * n);
  if (value.is_zero())
    throw std::logic_error("euler_via_bernoulli: vanishing value at n=" + std::to_string(n));
  return value;
}

}  // namespace chernvan
