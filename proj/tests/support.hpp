#pragma once

#include <random>
#include <string>

#include "chernvan/graded_series.hpp"
#include "oracles.hpp"

namespace testsupport {

inline std::string fixture(const std::string& rel) { return std::string(CHERNVAN_FIXTURE_DIR) + "/" + rel; }

inline oracle::Poly to_poly(const chernvan::GradedSeries& s) {
  oracle::Poly p;
  for (const auto& [e, c] : s.terms()) p[e] = c.raw();
  return p;
}

inline chernvan::GradedSeries random_series(std::mt19937_64& rng, int g, int d, int terms = 6) {
  std::uniform_int_distribution<int> coef(-9, 9), den(1, 5), deg(0, d);
  chernvan::GradedSeries s(g, d);
  for (int t = 0; t < terms; ++t) {
    chernvan::Exponents e(g, 0);
    int left = deg(rng);
    for (int i = 0; i < g && left > 0; ++i) {
      const int x = std::uniform_int_distribution<int>(0, left)(rng);
      e[i] = x;
      left -= x;
    }
    s.add_term(e, chernvan::Rat(coef(rng), den(rng)));
  }
  return s;
}

}  // namespace testsupport
