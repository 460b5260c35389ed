#include "chernvan/numbers.hpp"
#include "chernvan/weight_one.hpp"
#include "doctest.h"
#include "support.hpp"

using chernvan::GradedSeries;
using chernvan::Rat;

TEST_CASE("psi coefficients") {
  const auto psi = chernvan::psi_expansion(4);
  REQUIRE(psi.size() == 4);
  CHECK(psi[0] == Rat(1, 2));
  CHECK(psi[1] == Rat(1, 8));
  CHECK(psi[2].is_zero());
  CHECK(psi[3] == Rat(-1, 192));
}

TEST_CASE("lemma for one root at degree four") {
  const auto rep = chernvan::verify_lemma21(1, 4);
  CHECK(rep.passed);
  REQUIRE(rep.even_ratios.size() == 2);
  CHECK(rep.even_ratios[0].lambda == Rat(1, 4));
  CHECK(rep.even_ratios[1].lambda == Rat(-1, 8));
  // P = a^2/4 - a^4/96
  CHECK(rep.even_ratios[0].p_coefficient == Rat(1, 4));
  CHECK(rep.even_ratios[1].p_coefficient == Rat(-1, 96));
  CHECK(rep.dropped_constant_p == "2*log(2)");
  CHECK(rep.dropped_rank == Rat(2));
  CHECK(rep.odd_product_degree_zero.is_zero());
}

TEST_CASE("lemma for g up to 3") {
  for (int g = 1; g <= 3; ++g) {
    const auto rep = chernvan::verify_lemma21(g, 2 * g + 2);
    CHECK(rep.passed);
    CHECK(rep.nonvanishing_certified);
    for (const auto& [k, residual] : rep.odd_residuals) CHECK(residual.is_zero());
    for (const auto& r : rep.even_ratios) {
      CHECK(r.lambda == -chernvan::euler_number(2 * r.n - 1) * Rat(1, 2));
      CHECK(r.ch_coefficient == Rat(2) / chernvan::factorial(2 * r.n));
    }
  }
}

TEST_CASE("wedge parity and the first relation") {
  for (int g = 1; g <= 3; ++g) {
    const auto w = chernvan::ch_even_odd_wedge(g, 4);
    CHECK(w.even.constant_term() == chernvan::power_of_two(2 * g - 1));
    CHECK(w.odd.constant_term() == chernvan::power_of_two(2 * g - 1));
    const auto rel = chernvan::first_relation_rewrite(g, 6);
    CHECK(rel.passed);
    CHECK(rel.degree_zero == chernvan::power_of_two(2 * g));
  }
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(chernvan::verify_lemma21(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(chernvan::verify_lemma21(1, 1), std::invalid_argument);
}
