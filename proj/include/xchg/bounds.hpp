#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "xchg/rational.hpp"

namespace xchg {

struct BoundEntry {
  std::string name;
  double gamma = 0.0;
  int n_particles = 0;
  double value = 0.0;
  std::string anchor;                      // which closed form produced it
  std::string note;                        // validity / provenance
  std::optional<std::string> exact_value;  // p/q when rational
  bool asserted = true;  // participates in bracket assertions (vs report-only)
};

struct BoundLedger {
  std::vector<BoundEntry> entries;
  void to_csv(std::ostream& out) const;
  const BoundEntry* find(const std::string& name) const;
};

// Closed-form lower bounds on the frozen-coordinate gap:
//   gamma = 0:       1 - 1/N - 2/N^2                         (exact value)
//   gamma = 1:       1 - 1/(N-1) - 2/(N(N-1))
//   0 < gamma < 1:   (1 - (1-gamma)/(N-1)) * (1 - 1/(N-1) - 2/(N(N-1)))
// plus the cruder weight-comparison bound (N/(N-1))^(gamma-2) (1 - 3/(N-1)^2)
// that drives the small-N chain.
BoundLedger gamma_lower_bounds(double gamma, int n_particles);

// The asserted lower bound alone, as a rational (gamma must be rational-exact).
Rational gamma_lower_bound_exact(const Rational& gamma, int n_particles);

// Rigorous bracket for prod_{j=from}^infty (1 - 3/(j-1)^2): partial product
// in exact arithmetic, tail bounded below via log(1-x) >= -x - x^2 and
// sum_{j>M} 3/(j-1)^2 < 3/(M-1).
struct ProductBracket {
  double lower = 0.0;
  double upper = 0.0;
  long terms = 0;
};
ProductBracket tail_product_bracket(int from_j, long terms);

enum class GammaSource {
  kClosedForm,        // the ledger bounds above
  kGalerkinCertified  // Galerkin upper estimates replaced by certified lower bounds
};

struct ChainEntry {
  int n_particles;
  double gamma_lower;   // lower bound on the frozen-form gap used at this step
  double value;         // running lower bound on the exchange gap
  std::optional<std::string> exact_value;
};

// Inductive chain Delta_N >= Delta_{N-1} * (N/(N-1)) * Gamma_N from the base
// Delta_2 = 2^(gamma+1). For gamma = 0 the chain telescopes to the sharp
// (2/3)(N+1)/(N-1), kept as an exact rational. For gamma = 1 the limit
// 4 * prod_{j>=3} (1 - 3/(j-1)^2) is bracketed rigorously. For
// 0 < gamma < 1 the weight-comparison chain gives the non-uniform bound
// (2/N)^(1-gamma) * 2^(1+gamma) * prod.
struct ChainResult {
  std::vector<ChainEntry> steps;
  double value = 0.0;                      // lower bound at the requested N
  std::optional<std::string> exact_value;  // gamma = 0 only
  std::optional<ProductBracket> limit;     // gamma = 1: rigorous liminf bracket
  std::string note;
};

ChainResult delta_chain(double gamma, int n_particles,
                        GammaSource source = GammaSource::kClosedForm);

// (1+x)^gamma >= 1 + gamma x - (1-gamma) x^2 on (-1, inf), and positivity of
// the quadratic minorant on [0, N]; grid + randomized check including the
// inflection point x* = (gamma/2)^(1/(2-gamma)) - 1.
struct MinorantReport {
  bool pass = false;
  double worst_margin = 0.0;  // min of lhs - rhs over all probes
  double inflection = 0.0;
  std::string note;
};
MinorantReport verify_minorant(double gamma, int sample_count, std::uint64_t seed = 2024);

// ((N-1)/N)^(1-gamma) <= W_gamma(eta) <= 1 with equality checks at the
// extreme point (N,0,...,0) and at (1,...,1).
struct WeightReport {
  bool pass = false;
  double lower_bound = 0.0;
  double min_seen = 0.0;
  double max_seen = 0.0;
  double extreme_value = 0.0;  // W at (N,0,...,0), must equal the lower bound
  std::string note;
};
WeightReport verify_weight_bounds(double gamma, int n_particles, int sample_count,
                                  std::uint64_t seed = 2024);

// Summability gate for the infinite product prod (N/(N-1))(1 - 1/N - A_N):
// positive limit iff sum A_N < infty with 0 <= A_N < (N-1)/N. Finitely many
// head values plus a tail majorant A_N <= tail_c * N^(-tail_p).
struct SummabilitySpec {
  int n0 = 3;
  std::vector<double> head;  // A_{n0}, A_{n0+1}, ...
  double tail_c = 0.0;
  double tail_p = 2.0;
};
struct SummabilityResult {
  bool certified_positive = false;
  double head_product = 0.0;   // product over the explicit head
  double limit_lower = 0.0;    // rigorous lower bound on the full product
  std::string note;
};
SummabilityResult summability_gate(const SummabilitySpec& spec);

}  // namespace xchg
