#include "windmill/rational.hpp"

#include <stdexcept>

namespace windmill {

Rational make_fraction(Integer num, Integer den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(std::move(num), std::move(den));
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  const auto dot = text.find('.');
  try {
    if (slash != std::string::npos) {
      Integer num(text.substr(0, slash));
      Integer den(text.substr(slash + 1));
      return make_fraction(std::move(num), std::move(den));
    }
    if (dot != std::string::npos) {
      // decimal form, e.g. "0.1" -> 1/10
      const std::string head = text.substr(0, dot);
      const std::string tail = text.substr(dot + 1);
      if (tail.empty()) throw std::invalid_argument(text);
      const bool negative = !head.empty() && head[0] == '-';
      Integer whole(head.empty() || head == "-" ? std::string("0") : head);
      Integer frac(tail);
      Integer scale = 1;
      for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
      Integer num = whole * scale + (negative ? -frac : frac);
      return make_fraction(std::move(num), std::move(scale));
    }
    return Rational(Integer(text));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
}

std::string to_string(const Rational& value) { return value.get_str(); }

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer double_factorial(long n) {
  if (n < -1) throw std::invalid_argument("double factorial of n < -1");
  if (n <= 1) return 1;
  Integer r;
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

}  // namespace windmill
