#pragma once

#include <iosfwd>
#include <map>
#include <shared_mutex>
#include <span>
#include <vector>

#include "xchg/rational.hpp"

namespace xchg {

// Exact mixed moments of the uniform measure on the energy simplex
// { eta in R_+^N : sum eta_j = N*E }:
//
//   E[ prod_j eta_j^{a_j} ] = (N*E)^{|a|} * (N-1)! * prod_j a_j! / (N-1+|a|)!
//
// This is the integration backbone for every inner product in the project.
// The formula itself is validated against Monte Carlo in the test suite
// before anything else trusts it.
class MomentOracle {
 public:
  explicit MomentOracle(int n_particles, Rational mean_energy = Rational(1));

  int n() const { return n_; }
  const Rational& mean_energy() const { return mean_energy_; }

  // `exponents` lists the exponents of distinct coordinates (order
  // irrelevant by exchangeability); at most N entries.
  Rational moment(std::span<const unsigned> exponents) const;

  // Audit dump: one line per exponent pattern up to the given total degree,
  // "a1,a2,... -> <decimal> = <p/q>".
  void dump(std::ostream& out, unsigned max_total_degree) const;

 private:
  int n_;
  Rational mean_energy_;
  mutable std::map<std::vector<unsigned>, Rational> cache_;
  mutable std::shared_mutex mutex_;
};

// Law of a single coordinate under the uniform simplex measure at mean 1:
// density (N-1)/N * (1 - eta/N)^(N-2) on [0, N].
class MarginalLaw {
 public:
  explicit MarginalLaw(int n_particles);

  int n() const { return n_; }
  double density(double eta) const;  // throws std::domain_error outside [0,N]
  double cdf(double eta) const;
  double inv_cdf(double u) const;  // exact inverse, u in [0,1]

  // ∫ eta^k dnu_N = N^k * k! (N-1)! / (k+N-1)!
  Rational moment(int k) const;
  double moment_double(int k) const { return to_double(moment(k)); }

 private:
  int n_;
};

// Closed-form conditional moments on the simplex (N >= 3, mean energy 1),
// together with their uniform caps 3, 9 and 24.
enum class ConditionalMoment {
  kSecondGivenOne,   // E[eta_i^2 | eta_j]        = 2(N-eta)^2 / (N(N-1))
  kSecondGivenTwo,   // E[eta_i^2 | eta_j, eta_k] = 2(N-eta-xi)^2 / ((N-1)(N-2))
  kFourthGivenOne,   // E[eta_i^4 | eta_j]        = 24(N-eta)^4 / ((N+2)(N+1)N(N-1))
};

double conditional_moment(ConditionalMoment which, int n_particles, double eta, double xi = 0.0);
double conditional_moment_cap(ConditionalMoment which);

}  // namespace xchg
