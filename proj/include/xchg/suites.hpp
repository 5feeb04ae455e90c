#pragma once

#include <cstdint>
#include <string>

namespace xchg {

// Named pass/fail verification suites shared by the CLI `verify` command and
// the acceptance harness.
struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string details;
};

// K phi_n = kappa_n phi_n exactly, |kappa| monotone, for all N <= n_max.
SuiteResult suite_k_spectrum(int n_max = 12, int degree = 8);

// Random sums of single-coordinate functions satisfy the norm sandwich.
SuiteResult suite_chaos_sandwich(int n_particles, int trials, std::uint64_t seed = 5);

SuiteResult suite_minorant(double gamma, int samples, std::uint64_t seed = 6);
SuiteResult suite_weights(double gamma, int n_particles, int samples, std::uint64_t seed = 7);

SuiteResult suite_decomposition_inequalities(double gamma, int n_particles, int trials,
                                             double ratio_cap = 100.0, std::uint64_t seed = 8);

// Two-sample KS test of the slice-map push-forward against direct uniform
// sampling (first coordinate), p > 0.01 at the given sample size.
SuiteResult suite_pushforward(int n_particles, long samples, std::uint64_t seed = 9);

// KS test that rescaling conditioned Gamma(alpha) samples matches direct
// sampling at the rescaled energy.
SuiteResult suite_gamma_scaling(double alpha, int n_particles, double t, long samples,
                                std::uint64_t seed = 10);

// Galerkin gap estimates at two energies differ by the exact power factor.
SuiteResult suite_scaling_relation(double gamma, int n_particles, int degree, double e_alt,
                                   double tol = 1e-8);

}  // namespace xchg
