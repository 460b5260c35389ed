#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace oracle {

mpz_class factorial(unsigned n) {
  mpz_class f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

mpz_class binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

std::vector<mpq_class> bernoulli_table(unsigned n_max) {
  std::vector<mpq_class> a(n_max + 1), out(n_max + 1);
  for (unsigned m = 0; m <= n_max; ++m) {
    a[m] = mpq_class(1, m + 1);
    for (unsigned j = m; j >= 1; --j) {
      a[j - 1] = j * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
    out[m] = a[0];
  }
  if (n_max >= 1) out[1] = -out[1];
  return out;
}

std::vector<mpq_class> euler_zero_table(unsigned n_max) {
  std::vector<mpq_class> e(n_max + 1);
  e[0] = 1;
  for (unsigned n = 1; n <= n_max; ++n) {
    mpq_class s = 0;
    for (unsigned k = 0; k < n; ++k) s += mpq_class(binomial(n, k)) * e[k];
    e[n] = -s / 2;
  }
  return e;
}

namespace {

int degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

void add(Poly& p, const Monomial& m, const mpq_class& c) {
  if (c == 0) return;
  mpq_class& slot = p[m];
  slot += c;
  if (slot == 0) p.erase(m);
}

}  // namespace

Poly poly_mul(const Poly& a, const Poly& b, int max_degree) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      if (degree(m) <= max_degree) add(out, m, ca * cb);
    }
  return out;
}

Poly exp_linear(const std::vector<long>& c, int max_degree) {
  const int g = static_cast<int>(c.size());
  Poly out;
  Monomial m(g, 0);
  // coefficient of a^m in exp(c.a) is prod c_i^{m_i} / m_i!
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == g) {
      mpq_class coeff = 1;
      for (int k = 0; k < g; ++k) {
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), mpz_class(c[k]).get_mpz_t(), m[k]);
        coeff *= mpq_class(p, factorial(m[k]));
      }
      coeff.canonicalize();
      add(out, m, coeff);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      m[i] = e;
      rec(i + 1, left - e);
    }
    m[i] = 0;
  };
  rec(0, max_degree);
  return out;
}

Poly elementary_of_exponentials(const std::vector<std::vector<long>>& roots, int k, int max_degree) {
  const std::size_t n = roots.size();
  const std::size_t g = n ? roots[0].size() : 0;
  Poly out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    std::vector<long> c(g, 0);
    for (std::size_t r = 0; r < n; ++r)
      if (mask >> r & 1)
        for (std::size_t i = 0; i < g; ++i) c[i] += roots[r][i];
    for (const auto& [m, v] : exp_linear(c, max_degree)) add(out, m, v);
  }
  return out;
}

Poly elementary(int g, int k) {
  Poly out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g); ++mask) {
    if (std::popcount(mask) != k) continue;
    Monomial m(g, 0);
    for (int i = 0; i < g; ++i) m[i] = (mask >> i) & 1;
    add(out, m, 1);
  }
  return out;
}

Poly power_sum(int g, int k) {
  Poly out;
  for (int i = 0; i < g; ++i) {
    Monomial m(g, 0);
    m[i] = k;
    add(out, m, 1);
  }
  return out;
}

mpz_class determinant(std::vector<std::vector<mpz_class>> m) {
  // Leibniz expansion over permutations.
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  mpz_class total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    mpz_class term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

namespace {

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (idx.size() == k) {
      f(idx);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
}

mpz_class minor(const std::vector<std::vector<mpz_class>>& m, const std::vector<std::size_t>& rows,
                const std::vector<std::size_t>& cols) {
  std::vector<std::vector<mpz_class>> sub;
  for (std::size_t r : rows) {
    std::vector<mpz_class> row;
    for (std::size_t c : cols) row.push_back(m[r][c]);
    sub.push_back(std::move(row));
  }
  return determinant(sub);
}

}  // namespace

int rank_by_minors(const std::vector<std::vector<mpz_class>>& m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t k = std::min(rows, cols); k > 0; --k) {
    bool found = false;
    for_each_subset(rows, k, [&](const std::vector<std::size_t>& r) {
      if (found) return;
      for_each_subset(cols, k, [&](const std::vector<std::size_t>& c) {
        if (!found && minor(m, r, c) != 0) found = true;
      });
    });
    if (found) return static_cast<int>(k);
  }
  return 0;
}

mpz_class gcd_of_maximal_minors(const std::vector<std::vector<mpz_class>>& m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  if (rows == 0 || rows > cols) return 0;
  std::vector<std::size_t> all_rows(rows);
  std::iota(all_rows.begin(), all_rows.end(), 0);
  mpz_class g = 0;
  for_each_subset(cols, rows, [&](const std::vector<std::size_t>& c) {
    mpz_class d = minor(m, all_rows, c);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
  });
  return g;
}

}  // namespace oracle
