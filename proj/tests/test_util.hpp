#pragma once

#include <doctest.h>

#include <cmath>

#include "xchg/stats.hpp"

namespace xchg::test {

// |observed - expected| within k standard errors (Monte Carlo convention).
inline void check_within_se(double observed, double expected, double std_error, double k = 3.0,
                            const char* what = "") {
  INFO(what, ": observed ", observed, " expected ", expected, " se ", std_error);
  CHECK(std::abs(observed - expected) <= k * std_error + 1e-15);
}

// Composite Simpson quadrature, used as an independent oracle.
template <typename F>
double simpson(F f, double a, double b, int intervals) {
  if (intervals % 2 == 1) ++intervals;
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int k = 1; k < intervals; ++k) sum += f(a + k * h) * (k % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace xchg::test
