#include "chernvan/cone.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "chernvan/error.hpp"
#include "chernvan/linalg.hpp"
#include "chernvan/rational.hpp"

namespace chernvan {
namespace {

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix out;
  for (const IntVector& row : m) {
    std::vector<Rat> r;
    for (const mpz_class& x : row) r.emplace_back(x);
    out.push_back(std::move(r));
  }
  return out;
}

std::string join(const IntVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + "]";
}

IntVector mat_vec(const IntMatrix& m, const IntVector& v) {
  IntVector out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t k = 0; k < v.size(); ++k) out[i] += m[i][k] * v[k];
  return out;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), p = b.empty() ? 0 : b[0].size();
  IntMatrix out(n, IntVector(p, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < p; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

IntMatrix transpose(const IntMatrix& m) {
  if (m.empty()) return {};
  IntMatrix out(m[0].size(), IntVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out[j][i] = m[i][j];
  return out;
}

void check_point(int g, const BPoint& v) {
  if (static_cast<int>(v.b.size()) != g || static_cast<int>(v.l.size()) != g)
    throw std::invalid_argument("generator does not match rank " + std::to_string(g));
  for (int i = 0; i < g; ++i) {
    if (static_cast<int>(v.b[i].size()) != g)
      throw std::invalid_argument("b must be a square " + std::to_string(g) + "x" +
                                  std::to_string(g) + " matrix");
    for (int j = 0; j < i; ++j)
      if (v.b[i][j] != v.b[j][i]) throw std::invalid_argument("b must be symmetric");
  }
}

IntVector parse_int_vector(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an integer list");
  IntVector v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw std::invalid_argument("expected an integer, got " + x.dump());
    v.emplace_back(x.dump());
  }
  return v;
}

}  // namespace

LatticeContext::LatticeContext(int rank) : g(rank) {
  if (rank < 1) throw std::invalid_argument("lattice rank must be >= 1");
}

IntVector flatten(const BPoint& v) {
  IntVector out;
  for (std::size_t i = 0; i < v.b.size(); ++i)
    for (std::size_t j = i; j < v.b.size(); ++j) out.push_back(v.b[i][j]);
  out.insert(out.end(), v.l.begin(), v.l.end());
  return out;
}

std::string format_point(const BPoint& v) {
  std::string s = "b = [";
  for (std::size_t i = 0; i < v.b.size(); ++i) s += (i ? "," : "") + join(v.b[i]);
  return s + "]; l = " + join(v.l);
}

Cone make_cone(int g, std::vector<BPoint> generators) {
  LatticeContext ctx(g);
  for (const BPoint& v : generators) {
    check_point(g, v);
    const IntVector f = flatten(v);
    if (std::all_of(f.begin(), f.end(), [](const mpz_class& x) { return x == 0; }))
      throw std::invalid_argument("cone generators must be nonzero");
  }
  std::sort(generators.begin(), generators.end());
  return Cone{ctx.g, std::move(generators)};
}

Cone parse_cone(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  int g = 0;
  std::vector<BPoint> gens;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      BPoint v;
      bool have_b = false, have_l = false;
      std::istringstream parts(line);
      std::string part;
      while (std::getline(parts, part, ';')) {
        if (part.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected 'key = value'");
        std::string key = part.substr(0, eq);
        key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
        const nlohmann::json value = nlohmann::json::parse(part.substr(eq + 1));
        if (key == "b") {
          if (!value.is_array()) throw std::invalid_argument("b must be a list of rows");
          for (const auto& row : value) v.b.push_back(parse_int_vector(row));
          have_b = true;
        } else if (key == "l") {
          v.l = parse_int_vector(value);
          have_l = true;
        } else {
          throw std::invalid_argument("unknown key '" + key + "'");
        }
      }
      if (!have_b || !have_l) throw std::invalid_argument("a generator needs both b and l");
      if (g == 0) g = static_cast<int>(v.l.size());
      check_point(g, v);
      gens.push_back(std::move(v));
    } catch (const std::exception& e) {
      throw InputError(ErrorKind::parse, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (gens.empty()) throw InputError(ErrorKind::parse, "cone has no generators");
  try {
    return make_cone(g, std::move(gens));
  } catch (const std::invalid_argument& e) {
    throw InputError(ErrorKind::validation, e.what());
  }
}

Cone load_cone(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(ErrorKind::io, "cannot open cone file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_cone(buf.str());
  } catch (const InputError& e) {
    throw InputError(e.kind(), path + ": " + e.what());
  }
}

std::vector<mpz_class> elementary_divisors(IntMatrix m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<mpz_class> out;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the lower-right block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) pr = i, pc = j;
      if (pr == rows) return out;
      std::swap(m[t], m[pr]);
      for (auto& row : m) std::swap(row[t], row[pc]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // The pivot must divide the whole remaining block.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(m[i][j].get_mpz_t(), m[t][t].get_mpz_t())) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.push_back(abs(m[t][t]));
  }
  return out;
}

mpz_class determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

bool is_smooth(const Cone& c, const LatticeContext& ctx) {
  if (c.g != ctx.g) throw std::invalid_argument("cone rank does not match the lattice context");
  IntMatrix m;
  for (const BPoint& v : c.generators) m.push_back(flatten(v));
  const std::vector<mpz_class> d = elementary_divisors(m);
  return d.size() == m.size() &&
         std::all_of(d.begin(), d.end(), [](const mpz_class& x) { return x == 1; });
}

AffineElement identity_element(int g) {
  AffineElement e{IntMatrix(g, IntVector(g, 0)), IntVector(g, 0)};
  for (int i = 0; i < g; ++i) e.gamma[i][i] = 1;
  return e;
}

IntMatrix unimodular_inverse(const IntMatrix& gamma) {
  const std::size_t n = gamma.size();
  for (const IntVector& row : gamma)
    if (row.size() != n) throw std::invalid_argument("gamma must be square");
  const mpz_class det = determinant(gamma);
  if (det != 1 && det != -1)
    throw std::invalid_argument("gamma is not unimodular (det = " + det.get_str() + ")");
  IntMatrix inv(n, IntVector(n));
  const RatMatrix a = to_rat(gamma);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Rat> e(n, Rat(0));
    e[c] = Rat(1);
    const auto x = solve_particular(a, e, n);
    for (std::size_t r = 0; r < n; ++r) inv[r][c] = (*x)[r].numerator();
  }
  return inv;
}

AffineElement compose(const AffineElement& x, const AffineElement& y) {
  AffineElement out{mat_mul(x.gamma, y.gamma), mat_vec(unimodular_inverse(y.gamma), x.mu)};
  for (std::size_t i = 0; i < out.mu.size(); ++i) out.mu[i] += y.mu[i];
  return out;
}

BPoint act(const AffineElement& x, const BPoint& v) {
  const IntMatrix inv = unimodular_inverse(x.gamma);
  if (x.mu.size() != v.l.size() || x.gamma.size() != v.b.size())
    throw std::invalid_argument("act: rank mismatch");
  BPoint out = v;
  const IntVector shift = mat_vec(v.b, x.mu);
  for (std::size_t i = 0; i < out.l.size(); ++i) out.l[i] += shift[i];
  out.b = mat_mul(transpose(inv), mat_mul(out.b, inv));
  out.l = mat_vec(transpose(inv), out.l);  // row vector l times inv
  return out;
}

bool is_positive_semidefinite(const IntMatrix& b) {
  const std::size_t n = b.size();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    IntMatrix minor;
    for (std::size_t i : idx) {
      IntVector row;
      for (std::size_t j : idx) row.push_back(b[i][j]);
      minor.push_back(std::move(row));
    }
    if (determinant(minor) < 0) return false;
  }
  return true;
}

bool in_ctilde(const BPoint& v, const LatticeContext& ctx) {
  check_point(ctx.g, v);
  if (!is_positive_semidefinite(v.b)) return false;
  for (const std::vector<Rat>& k : null_space(to_rat(v.b), ctx.g)) {
    Rat s;
    for (int i = 0; i < ctx.g; ++i) s += Rat(v.l[i]) * k[i];
    if (!s.is_zero()) return false;
  }
  return true;
}

long default_witness_bound(const Cone& c) {
  mpz_class m = 0;
  for (const BPoint& v : c.generators)
    for (const mpz_class& x : v.l) m = std::max(m, mpz_class(abs(x)));
  return m.get_si() * c.g + 1;
}

std::optional<InvarianceWitness> find_invariance_witness(const Cone& c, const LatticeContext& ctx,
                                                         long bound) {
  if (c.g != ctx.g) throw std::invalid_argument("cone rank does not match the lattice context");
  if (bound < 0) throw std::invalid_argument("witness bound must be >= 0");
  const std::size_t r = c.generators.size();
  const int g = ctx.g;

  // Integer points of the box in (|mu|_1, lex) order, built lazily.
  std::vector<IntVector> box;
  auto ensure_box = [&] {
    if (!box.empty()) return;
    std::vector<long> cur(g, -bound);
    for (;;) {
      IntVector v;
      for (long x : cur) v.emplace_back(x);
      box.push_back(std::move(v));
      int k = g - 1;
      while (k >= 0 && cur[k] == bound) cur[k--] = -bound;
      if (k < 0) break;
      ++cur[k];
    }
    auto l1 = [](const IntVector& v) {
      mpz_class s = 0;
      for (const auto& x : v) s += abs(x);
      return s;
    };
    std::stable_sort(box.begin(), box.end(),
                     [&](const IntVector& a, const IntVector& b) { return l1(a) < l1(b); });
  };

  auto solve_for = [&](const std::vector<int>& perm) -> std::optional<IntVector> {
    RatMatrix a;
    std::vector<Rat> rhs;
    for (std::size_t i = 0; i < r; ++i) {
      const BPoint& gi = c.generators[i];
      const BPoint& gj = c.generators[perm[i]];
      for (int row = 0; row < g; ++row) {
        std::vector<Rat> eq;
        for (int k = 0; k < g; ++k) eq.emplace_back(gj.b[row][k]);
        a.push_back(std::move(eq));
        rhs.emplace_back(mpz_class(gi.l[row] + gj.l[row]));
      }
    }
    const auto particular = solve_particular(a, rhs, g);
    if (!particular) return std::nullopt;
    if (null_space(a, g).empty()) {
      IntVector mu;
      for (const Rat& x : *particular) {
        if (!x.is_integer() || abs(x.numerator()) > bound) return std::nullopt;
        mu.push_back(x.numerator());
      }
      return mu;
    }
    ensure_box();
    for (const IntVector& mu : box) {
      bool ok = true;
      for (std::size_t e = 0; e < a.size() && ok; ++e) {
        Rat s;
        for (int k = 0; k < g; ++k) s += a[e][k] * Rat(mu[k]);
        ok = s == rhs[e];
      }
      if (ok) return mu;
    }
    return std::nullopt;
  };

  std::vector<int> perm(r, -1);
  std::vector<bool> used(r, false);
  std::optional<InvarianceWitness> found;
  std::function<void(std::size_t)> search = [&](std::size_t i) {
    if (found) return;
    if (i == r) {
      if (auto mu = solve_for(perm)) found = InvarianceWitness{perm, std::move(*mu)};
      return;
    }
    for (std::size_t t = 0; t < r && !found; ++t) {
      if (used[t] || c.generators[t].b != c.generators[i].b) continue;
      used[t] = true;
      perm[i] = static_cast<int>(t);
      search(i + 1);
      used[t] = false;
    }
  };
  search(0);
  return found;
}

const char* status_name(FixedStratumStatus s) {
  switch (s) {
    case FixedStratumStatus::smooth_locus: return "fixed stratum lies in smooth locus";
    case FixedStratumStatus::hypothesis_violation: return "hypothesis violation";
    case FixedStratumStatus::failed: return "failed";
  }
  return "?";
}

FixedStratumReport fixed_stratum_check(const Cone& c, const InvarianceWitness& w,
                                       const LatticeContext& ctx, bool even_level) {
  const std::size_t r = c.generators.size();
  if (w.permutation.size() != r || static_cast<int>(w.mu.size()) != ctx.g)
    throw std::invalid_argument("witness does not match the cone");
  FixedStratumReport rep;
  bool ok = true;
  auto assert_that = [&](bool cond, const std::string& what) {
    rep.assertions.push_back(std::string(cond ? "ok: " : "FAILED: ") + what);
    ok = ok && cond;
  };

  for (std::size_t i = 0; i < r; ++i) {
    const BPoint& gi = c.generators[i];
    const BPoint& gj = c.generators[w.permutation[i]];
    const IntVector bmu = mat_vec(gj.b, w.mu);
    bool eq = gi.b == gj.b;
    for (int k = 0; k < ctx.g && eq; ++k) eq = gi.l[k] + gj.l[k] == bmu[k];
    if (!eq) throw std::invalid_argument("witness does not satisfy the invariance equations");
  }

  if (!even_level) {
    rep.summary = "even-level hypothesis not asserted; fixed-stratum argument not applied";
    rep.status = FixedStratumStatus::failed;
    return rep;
  }
  IntVector half;
  for (const mpz_class& x : w.mu) {
    if (!mpz_even_p(x.get_mpz_t())) {
      rep.status = FixedStratumStatus::hypothesis_violation;
      rep.summary = "mu = " + join(w.mu) +
                    " is odd; excluded by the even-level rescaling N = 2N'";
      return rep;
    }
    half.push_back(x / 2);
  }
  rep.assertions.push_back("ok: mu = 2 mu' with mu' = " + join(half));

  // (b_i, -l_i) = (b_j(i), l_j(i) + 2 b_j(i) mu') is congruent to (b_j(i), l_j(i)) mod 2.
  std::vector<IntVector> mod2;
  for (const BPoint& v : c.generators) {
    IntVector f = flatten(v);
    for (mpz_class& x : f) x = mpz_class(mpz_even_p(x.get_mpz_t()) ? 0 : 1);
    mod2.push_back(std::move(f));
  }
  bool congruent = true;
  for (std::size_t i = 0; i < r; ++i) congruent = congruent && mod2[i] == mod2[w.permutation[i]];
  assert_that(congruent, "generator i is congruent to generator j(i) mod 2");
  bool distinct = true;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = i + 1; k < r; ++k) distinct = distinct && mod2[i] != mod2[k];
  assert_that(distinct, "generators are pairwise distinct mod 2");
  bool identity = true;
  for (std::size_t i = 0; i < r; ++i) identity = identity && w.permutation[i] == static_cast<int>(i);
  assert_that(identity, "j(i) = i for every generator");

  bool linear = true;
  for (const BPoint& v : c.generators) linear = linear && v.l == mat_vec(v.b, half);
  assert_that(linear, "l_i = b_i mu' over Z");

  IntMatrix with_l, only_b;
  for (const BPoint& v : c.generators) {
    with_l.push_back(flatten(v));
    IntVector f = flatten(v);
    f.resize(f.size() - ctx.g);
    only_b.push_back(std::move(f));
  }
  rep.rank_with_l = static_cast<int>(rank(to_rat(with_l)));
  rep.rank_b = static_cast<int>(rank(to_rat(only_b)));
  assert_that(rep.rank_with_l == rep.rank_b,
              "rank span{(b_i,l_i)} = " + std::to_string(rep.rank_with_l) +
                  " equals rank span{b_i} = " + std::to_string(rep.rank_b));
  rep.status = ok ? FixedStratumStatus::smooth_locus : FixedStratumStatus::failed;
  rep.summary = status_name(rep.status);
  return rep;
}

}  // namespace chernvan
