#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace xchg {

// Exact arithmetic backbone. Every moment, inner product and Galerkin
// matrix entry that can be kept rational is kept rational; conversion to
// double happens only at the eigensolver / report boundary.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

Rational pow_rational(const Rational& base, unsigned exponent);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Exact: every finite double is a dyadic rational.
Rational rational_from_double(double x);

// "p/q" (or just "p" when q == 1), the wire format for exact values.
std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

}  // namespace xchg
