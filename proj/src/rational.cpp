#include "chernvan/rational.hpp"

#include <stdexcept>

namespace chernvan {

Rat::Rat(long num, long den) : q_(num, den) {
  if (den == 0) throw std::domain_error("Rat: zero denominator");
  q_.canonicalize();
}

Rat::Rat(mpq_class q) : q_(std::move(q)) {
  if (q_.get_den() == 0) throw std::domain_error("Rat: zero denominator");
  q_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  std::string s(text);
  auto valid_int = [](std::string_view part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw std::invalid_argument("not a rational: '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return Rat(mpq_class(n, d));
}

std::string Rat::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("Rat: division by zero");
  q_ /= o.q_;
  return *this;
}

Rat Rat::inverse() const { return Rat(1) / *this; }

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rat(f);
}

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

Rat power_of_two(unsigned n) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, n);
  return Rat(p);
}

}  // namespace chernvan
