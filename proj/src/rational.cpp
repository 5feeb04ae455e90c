#include "xchg/rational.hpp"

#include <stdexcept>

namespace xchg {

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned j = 0; j < k; ++j) {
    r *= (n - j);
    r /= (j + 1);  // divides exactly at every step
  }
  return r;
}

Rational pow_rational(const Rational& base, unsigned exponent) {
  Rational r = 1;
  Rational b = base;
  unsigned e = exponent;
  while (e > 0) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1u;
  }
  return r;
}

Rational rational_from_double(double x) {
  return Rational(x);  // mpq_set_d is exact
}

std::string rational_to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  BigInt num(s.substr(0, slash));
  BigInt den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  return Rational(num, den);
}

}  // namespace xchg
