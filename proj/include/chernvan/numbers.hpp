#pragma once

#include "chernvan/rational.hpp"

namespace chernvan {

// B_n with t/(e^t - 1) = sum B_n t^n / n!, so B_1 = -1/2.
Rat bernoulli(unsigned n);

// E_n(0), the Euler polynomials at zero: 1/(1 + e^t) = 1/2 sum E_n(0) t^n / n!.
// Not the integer secant numbers.
Rat euler_number(unsigned n);

// 2 (1 - 4^n) / (2n) * B_{2n}. Equals E_{2n-1}(0). Throws std::logic_error
// if the value is zero, which would mean B_{2n} vanished.
Rat euler_via_bernoulli(unsigned n);

}  // namespace chernvan
