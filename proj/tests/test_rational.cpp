#include <random>
#include <stdexcept>

#include "chernvan/rational.hpp"
#include "doctest.h"

using chernvan::Rat;

TEST_CASE("parse and print") {
  CHECK(Rat::parse("3/6").str() == "1/2");
  CHECK(Rat::parse("-4").str() == "-4/1");
  CHECK(Rat::parse("0").str() == "0/1");
  CHECK(Rat::parse("-7/14") == Rat(-1, 2));
  CHECK_THROWS_AS(Rat::parse("7/-14"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse(""), std::invalid_argument);
  CHECK_THROWS(Rat(0).inverse());
}

TEST_CASE("field axioms on random samples") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
  for (int i = 0; i < 500; ++i) {
    const Rat a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Rat(0));
    if (!a.is_zero()) CHECK(a * a.inverse() == Rat(1));
    CHECK(Rat::parse(a.str()) == a);
  }
}

TEST_CASE("helpers") {
  CHECK(chernvan::factorial(5) == Rat(120));
  CHECK(chernvan::binomial(6, 2) == 15);
  CHECK(chernvan::power_of_two(10) == Rat(1024));
  CHECK(Rat(-3, 4).abs() == Rat(3, 4));
  CHECK(Rat(-3, 4).sign() == -1);
  CHECK(Rat(1, 3) < Rat(1, 2));
}
