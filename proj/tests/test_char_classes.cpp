#include <random>

#include "chernvan/char_classes.hpp"
#include "chernvan/numbers.hpp"
#include "doctest.h"
#include "support.hpp"

using chernvan::GradedSeries;
using chernvan::KClass;
using chernvan::Rat;

namespace {

KClass random_class(std::mt19937_64& rng, int g) {
  KClass k(g);
  std::uniform_int_distribution<long> c(-2, 2), mult(1, 2);
  const int n = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int r = 0; r < n; ++r) {
    chernvan::RootForm root(g);
    for (long& x : root) x = c(rng);
    k.add_root(root, mult(rng));
  }
  return k;
}

std::vector<std::vector<long>> roots_of(const KClass& k) { return k.expanded_roots(); }

}  // namespace

TEST_CASE("ch of a line bundle is the exponential") {
  const KClass l = KClass::line({2, -1});
  CHECK(testsupport::to_poly(chernvan::ch(l, 5)) == oracle::exp_linear({2, -1}, 5));
  CHECK(chernvan::ch(KClass::trivial_line(2), 3) == GradedSeries::constant(2, 3, Rat(1)));
}

TEST_CASE("exterior powers of H against subset enumeration") {
  for (int g = 1; g <= 3; ++g) {
    const KClass h = KClass::hodge_pair(g);
    CHECK(h.rank() == 2 * g);
    for (int k = 0; k <= 2 * g; ++k)
      CHECK(testsupport::to_poly(chernvan::ch(chernvan::lambda_power(h, k), 6)) ==
            oracle::elementary_of_exponentials(roots_of(h), k, 6));
  }
}

TEST_CASE("ch is a ring homomorphism and commutes with duals") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    const int g = 1 + trial % 3;
    const KClass a = random_class(rng, g), b = random_class(rng, g);
    CHECK(chernvan::ch(a + b, 5) == chernvan::ch(a, 5) + chernvan::ch(b, 5));
    CHECK(chernvan::ch(tensor(a, b), 5) == chernvan::ch(a, 5) * chernvan::ch(b, 5));
    CHECK(chernvan::ch(a.dual(), 5) == chernvan::ch(a, 5).reflected());
  }
}

TEST_CASE("lambda_t is multiplicative") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 12; ++trial) {
    const int g = 1 + trial % 2;
    const KClass a = random_class(rng, g), b = random_class(rng, g);
    const auto la = chernvan::lambda_t_ch(a, 4), lb = chernvan::lambda_t_ch(b, 4);
    const auto lab = chernvan::lambda_t_ch(a + b, 4);
    REQUIRE(lab.size() == la.size() + lb.size() - 1);
    for (std::size_t n = 0; n < lab.size(); ++n) {
      GradedSeries conv(g, 4);
      for (std::size_t i = 0; i < la.size(); ++i)
        if (n >= i && n - i < lb.size()) conv += la[i] * lb[n - i];
      CHECK(conv == lab[n]);
    }
  }
}

TEST_CASE("Todd coefficients are (-1)^n B_n / n!") {
  const auto b = oracle::bernoulli_table(12);
  const auto q = chernvan::todd_series_coefficients(12);
  REQUIRE(q.size() == 13);
  for (unsigned n = 0; n <= 12; ++n)
    CHECK(q[n].raw() == (n % 2 ? -b[n] : b[n]) / mpq_class(oracle::factorial(n)));
}

TEST_CASE("Chern classes") {
  for (int g = 1; g <= 4; ++g) {
    const KClass e = KClass::generic(g);
    for (int k = 0; k <= g; ++k)
      CHECK(testsupport::to_poly(chernvan::chern_class(e, k, g + 1)) == oracle::elementary(g, k));
    CHECK(testsupport::to_poly(chernvan::top_chern_class(e, g + 1)) == oracle::elementary(g, g));
  }
  // todd of a line is x / (1 - e^-x); its inverse times it is 1
  const KClass l = KClass::line({1});
  CHECK(chernvan::todd(l, 6) * chernvan::todd(KClass::line({1}, -1), 6) ==
        GradedSeries::constant(1, 6, Rat(1)));
}

TEST_CASE("c_g identity and lambda product identity") {
  for (int g = 1; g <= 3; ++g) {
    const auto rep = chernvan::verify_cg_identity(g, 2 * g + 2);
    CHECK(rep.passed);
    CHECK_FALSE(rep.first_failing_degree.has_value());
  }
  for (int g = 1; g <= 2; ++g) CHECK(chernvan::verify_lambda_product(g, 6).passed);
}
