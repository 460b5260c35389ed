#include <random>
#include <stdexcept>

#include "chernvan/cone.hpp"
#include "chernvan/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace chernvan;

namespace {

BPoint pt(IntMatrix b, IntVector l) { return BPoint{std::move(b), std::move(l)}; }

IntMatrix random_unimodular(std::mt19937_64& rng, int g) {
  // Product of elementary matrices and sign flips.
  IntMatrix m(g, IntVector(g, 0));
  for (int i = 0; i < g; ++i) m[i][i] = 1;
  std::uniform_int_distribution<int> idx(0, g - 1), k(-2, 2);
  for (int step = 0; step < 6; ++step) {
    const int i = idx(rng), j = idx(rng);
    if (i == j) {
      for (auto& x : m[i]) x = -x;
      continue;
    }
    const int f = k(rng);
    for (int c = 0; c < g; ++c) m[i][c] += f * m[j][c];
  }
  return m;
}

BPoint random_point(std::mt19937_64& rng, int g) {
  std::uniform_int_distribution<int> v(-4, 4);
  BPoint p{IntMatrix(g, IntVector(g)), IntVector(g)};
  for (int i = 0; i < g; ++i) {
    for (int j = i; j < g; ++j) p.b[i][j] = p.b[j][i] = v(rng);
    p.l[i] = v(rng);
  }
  return p;
}

IntVector random_vector(std::mt19937_64& rng, int g) {
  std::uniform_int_distribution<int> v(-3, 3);
  IntVector x(g);
  for (auto& c : x) c = v(rng);
  return x;
}

}  // namespace

TEST_CASE("smoothness examples") {
  const LatticeContext one(1);
  CHECK(one.ambient_dim() == 2);
  CHECK(LatticeContext(3).ambient_dim() == 9);
  CHECK(is_smooth(make_cone(1, {pt({{1}}, {0})}), one));
  CHECK_FALSE(is_smooth(make_cone(1, {pt({{2}}, {0})}), one));
  // e_1 and e_1 + 2 e_2
  CHECK_FALSE(is_smooth(make_cone(1, {pt({{1}}, {0}), pt({{1}}, {2})}), one));
  CHECK_FALSE(is_smooth(make_cone(1, {pt({{1}}, {1}), pt({{2}}, {2})}), one));
  CHECK_THROWS_AS(make_cone(1, {pt({{0}}, {0})}), std::invalid_argument);
  CHECK_THROWS_AS(make_cone(2, {pt({{1, 2}, {0, 1}}, {0, 0})}), std::invalid_argument);
}

TEST_CASE("Smith normal form agrees with the gcd of maximal minors") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> v(-3, 3), dim(1, 4);
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = dim(rng), cols = rows + std::uniform_int_distribution<int>(0, 3)(rng);
    IntMatrix m(rows, IntVector(cols));
    for (auto& row : m)
      for (auto& x : row) x = v(rng);
    const auto d = elementary_divisors(m);
    mpz_class product = 1;
    for (const auto& x : d) product *= x;
    const mpz_class g = oracle::gcd_of_maximal_minors(m);
    if (g == 0) {
      CHECK(static_cast<int>(d.size()) < rows);
    } else {
      CHECK(static_cast<int>(d.size()) == rows);
      CHECK(product == g);
    }
    for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i] % d[i - 1] == 0);
    if (rows == cols) CHECK(determinant(m) == oracle::determinant(m));
  }
}

TEST_CASE("action examples") {
  const BPoint v = pt({{2, 1}, {1, 3}}, {5, -7});
  CHECK(act(identity_element(2), v) == v);
  AffineElement minus{{{-1, 0}, {0, -1}}, {0, 0}};
  CHECK(act(minus, v) == pt({{2, 1}, {1, 3}}, {-5, 7}));
  AffineElement shift{{{1, 0}, {0, 1}}, {1, 0}};
  CHECK(act(shift, pt({{1, 0}, {0, 1}}, {4, 4})) == pt({{1, 0}, {0, 1}}, {5, 4}));
  AffineElement bad{{{2, 0}, {0, 1}}, {0, 0}};
  CHECK_THROWS_AS(act(bad, v), std::invalid_argument);
  CHECK(unimodular_inverse({{2, 1}, {1, 1}}) == IntMatrix{{1, -1}, {-1, 2}});
}

TEST_CASE("group law, involution and triviality on B(N)") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const int g = 1 + trial % 3;
    const AffineElement x{random_unimodular(rng, g), random_vector(rng, g)};
    const AffineElement y{random_unimodular(rng, g), random_vector(rng, g)};
    const BPoint v = random_point(rng, g);
    CHECK(act(compose(x, y), v) == act(x, act(y, v)));
    AffineElement minus = identity_element(g);
    for (int i = 0; i < g; ++i) minus.gamma[i][i] = -1;
    CHECK(act(minus, act(minus, v)) == v);
    CHECK(act(minus, v).b == v.b);
  }
}

TEST_CASE("membership in C~") {
  const LatticeContext two(2);
  CHECK(in_ctilde(pt({{0, 0}, {0, 0}}, {0, 0}), two));
  CHECK_FALSE(in_ctilde(pt({{0, 0}, {0, 0}}, {1, 0}), two));
  CHECK_FALSE(in_ctilde(pt({{1, 0}, {0, 0}}, {0, 1}), two));
  CHECK(in_ctilde(pt({{1, 0}, {0, 0}}, {5, 0}), two));
  CHECK_FALSE(in_ctilde(pt({{1, 0}, {0, -1}}, {0, 0}), two));
  CHECK(in_ctilde(pt({{1, 1}, {1, 1}}, {3, 3}), two));
  CHECK_FALSE(in_ctilde(pt({{1, 1}, {1, 1}}, {3, 2}), two));
  CHECK(is_positive_semidefinite({{2, -1}, {-1, 2}}));
  CHECK_FALSE(is_positive_semidefinite({{0, 1}, {1, 0}}));
}

TEST_CASE("membership in C~ is invariant under GL(N)") {
  std::mt19937_64 rng(47);
  int inside = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int g = 1 + trial % 3;
    const LatticeContext ctx(g);
    // b = A^T A is positive semidefinite; l = c^T b vanishes on its kernel.
    IntMatrix a(g, IntVector(g));
    std::uniform_int_distribution<int> v(-2, 2);
    for (auto& row : a)
      for (auto& x : row) x = v(rng);
    BPoint p{IntMatrix(g, IntVector(g, 0)), IntVector(g, 0)};
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        for (int k = 0; k < g; ++k) p.b[i][j] += a[k][i] * a[k][j];
    const IntVector c = random_vector(rng, g);
    for (int i = 0; i < g; ++i)
      for (int k = 0; k < g; ++k) p.l[i] += p.b[i][k] * c[k];
    if (trial % 4 == 0) p.l[0] += 1;
    const AffineElement x{random_unimodular(rng, g), IntVector(g, 0)};
    const bool before = in_ctilde(p, ctx);
    inside += before;
    CHECK(in_ctilde(act(x, p), ctx) == before);
  }
  CHECK(inside > 100);
}

TEST_CASE("invariance witnesses") {
  const LatticeContext one(1), two(2);
  const Cone zero_l = make_cone(2, {pt({{1, 0}, {0, 0}}, {0, 0}), pt({{0, 0}, {0, 1}}, {0, 0})});
  auto w = find_invariance_witness(zero_l, two, default_witness_bound(zero_l));
  REQUIRE(w);
  CHECK(w->permutation == std::vector<int>{0, 1});
  CHECK(w->mu == IntVector{0, 0});

  const Cone swap = make_cone(1, {pt({{2}}, {1}), pt({{2}}, {-1})});
  w = find_invariance_witness(swap, one, 3);
  REQUIRE(w);
  CHECK(w->permutation == std::vector<int>{1, 0});
  CHECK(w->mu == IntVector{0});

  const Cone single = make_cone(1, {pt({{2}}, {1})});
  w = find_invariance_witness(single, one, default_witness_bound(single));
  REQUIRE(w);
  CHECK(w->mu == IntVector{1});
  CHECK_FALSE(find_invariance_witness(single, one, 0));

  const Cone none = make_cone(1, {pt({{1}}, {0}), pt({{2}}, {1})});
  CHECK_FALSE(find_invariance_witness(none, one, 10));
}

TEST_CASE("fixed stratum check") {
  const LatticeContext one(1), two(2);
  const Cone odd = make_cone(1, {pt({{2}}, {1})});
  const auto r = fixed_stratum_check(odd, {{0}, {1}}, one);
  CHECK(r.status == FixedStratumStatus::hypothesis_violation);

  const Cone unit = make_cone(1, {pt({{1}}, {0})});
  const auto u = fixed_stratum_check(unit, {{0}, {0}}, one);
  CHECK(u.status == FixedStratumStatus::smooth_locus);
  CHECK(u.rank_with_l == 1);
  CHECK(u.rank_b == 1);

  const Cone built = make_cone(2, {pt({{1, 0}, {0, 0}}, {1, 0})});
  const auto b = fixed_stratum_check(built, {{0}, {2, 0}}, two);
  CHECK(b.status == FixedStratumStatus::smooth_locus);
  CHECK(std::string(status_name(b.status)) == "fixed stratum lies in smooth locus");

  // A swap witness with even mu contradicts smoothness and fails the argument.
  const Cone swap = make_cone(1, {pt({{2}}, {1}), pt({{2}}, {-1})});
  CHECK(fixed_stratum_check(swap, {{1, 0}, {0}}, one).status == FixedStratumStatus::failed);
  CHECK_THROWS_AS(fixed_stratum_check(unit, {{0}, {1}}, one), std::invalid_argument);
}

TEST_CASE("cone files") {
  const Cone c = load_cone(testsupport::fixture("cones/g2_pass.cone"));
  CHECK(c.g == 2);
  CHECK(c.generators.size() == 2);
  CHECK(format_point(c.generators[1]) == "b = [[1,0],[0,0]]; l = [1,0]");
  CHECK(parse_cone("b = [[1]]; l = [0]\n# comment\nb=[[2]];l=[1] # tail\n").generators.size() == 2);
  CHECK_THROWS_AS(parse_cone("b = [[1]]\n"), InputError);
  CHECK_THROWS_AS(parse_cone("b = [[1]]; l = [0, 1]\n"), InputError);
  CHECK_THROWS_AS(parse_cone("b = [[1.5]]; l = [0]\n"), InputError);
  CHECK_THROWS_AS(parse_cone("# nothing\n"), InputError);
  CHECK_THROWS_AS(load_cone("/nonexistent.cone"), InputError);
}
