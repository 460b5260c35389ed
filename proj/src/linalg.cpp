#include "chernvan/linalg.hpp"

#include <stdexcept>

namespace chernvan {

std::vector<std::size_t> row_reduce(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rat inv = m[r][c].inverse();
    for (std::size_t k = c; k < cols; ++k) m[r][k] *= inv;
    for (std::size_t q = 0; q < rows; ++q) {
      if (q == r || m[q][c].is_zero()) continue;
      const Rat f = m[q][c];
      for (std::size_t k = c; k < cols; ++k) m[q][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(RatMatrix m) { return row_reduce(m).size(); }

std::optional<std::vector<Rat>> solve_particular(const RatMatrix& a, const std::vector<Rat>& b,
                                                 std::size_t cols) {
  if (a.size() != b.size()) throw std::invalid_argument("solve_particular: shape mismatch");
  RatMatrix aug = a;
  for (std::size_t r = 0; r < aug.size(); ++r) {
    if (aug[r].size() != cols) throw std::invalid_argument("solve_particular: ragged matrix");
    aug[r].push_back(b[r]);
  }
  const std::vector<std::size_t> pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  std::vector<Rat> x(cols);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return x;
}

std::vector<std::vector<Rat>> null_space(const RatMatrix& a, std::size_t cols) {
  RatMatrix m = a;
  const std::vector<std::size_t> pivots = row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(cols);
    v[free] = Rat(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace chernvan
