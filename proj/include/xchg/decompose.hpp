#pragma once

#include <vector>

#include "xchg/ortho.hpp"
#include "xchg/poly.hpp"

namespace xchg {

// Exact Gaussian elimination. A may be singular as long as the system is
// consistent; free variables are set to zero. Throws on inconsistency.
std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> a,
                                     std::vector<Rational> b);

// Canonical representation of f = sum_j rho_j(eta_j): each rho_j mean zero
// and sum_j <rho_j, eta-1> = 0. Unique; throws std::invalid_argument when f
// is not a sum of single-coordinate functions on the simplex.
struct CanonicalRep {
  std::vector<Poly1> rho;
};

CanonicalRep canonical_representation(const PolyFunction& f, const MomentOracle& oracle);

// Orthogonal split f = s + g + h of a mean-zero observable:
//   p = s + g  projection onto sums of single-coordinate functions,
//   s          the degree-one eigencomponent sum_j alpha_j phi_1(eta_j),
//   g = p - s  higher single-coordinate components,
//   h = f - p  annihilated by every conditional expectation P_k.
struct Decomposition {
  PolyFunction s, g, h;
  std::vector<Poly1> rho;               // canonical representation of p
  std::vector<Rational> alpha_monic;    // s = sum_j alpha_monic[j] (eta_j - 1)
  std::vector<double> alphas;           // coefficients along normalized phi_1; sum to 0
};

Decomposition trial_decomposition(const PolyFunction& f, const MomentOracle& oracle);

struct ChaosSandwichReport {
  Rational lower;    // (1 - 2/N) sum_j ||rho_j||^2
  Rational middle;   // ||f||^2
  Rational upper;    // (1 + 2/N) sum_j ||rho_j||^2
  bool pass = false;
};

ChaosSandwichReport verify_chaos_sandwich(const PolyFunction& f, const MomentOracle& oracle);

// Largest eigenvalue of P^(0) = (1/N) sum_k P_k restricted to the mean-zero
// single-coordinate span (the second largest eigenvalue of the full
// operator, below the trivial 1). The full computed spectrum can be
// retrieved for inspection.
double p0_second_eigenvalue(int n_particles, int max_degree,
                            std::vector<double>* spectrum = nullptr);

}  // namespace xchg
