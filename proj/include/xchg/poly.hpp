#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "xchg/moments.hpp"
#include "xchg/rational.hpp"

namespace xchg {

// Exponent vector of length n_particles.
using MultiIndex = std::vector<std::uint8_t>;

// Univariate polynomial with rational coefficients; c[k] multiplies x^k.
struct Poly1 {
  std::vector<Rational> c;

  Poly1() = default;
  explicit Poly1(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }

  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 when zero
  bool is_zero() const { return c.empty(); }
  void trim();

  const Rational& coeff(int k) const;
  double eval(double x) const;
  Rational eval(const Rational& x) const;
};

Poly1 operator+(const Poly1& a, const Poly1& b);
Poly1 operator-(const Poly1& a, const Poly1& b);
Poly1 operator*(const Poly1& a, const Poly1& b);
Poly1 operator*(const Rational& s, const Poly1& a);
bool operator==(const Poly1& a, const Poly1& b);

// (c0 + c1 x)^e
Poly1 affine_power(const Rational& c0, const Rational& c1, unsigned e);

// Multivariate polynomial observable in the N coordinate energies.
// Canonical form stores no zero coefficients. Identity as a function on the
// simplex is equality after eliminating the last coordinate; see reduced().
class PolyFunction {
 public:
  PolyFunction() = default;
  explicit PolyFunction(int n_vars) : n_(n_vars) {}

  static PolyFunction constant(int n, const Rational& c);
  static PolyFunction coordinate(int n, int k);
  static PolyFunction monomial(int n, const MultiIndex& idx, const Rational& c);
  // p(eta_k) embedded as an N-variable polynomial
  static PolyFunction from_univariate(int n, int k, const Poly1& p);

  int n() const { return n_; }
  const std::map<MultiIndex, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;

  void add_term(const MultiIndex& idx, const Rational& c);

  double eval(std::span<const double> eta) const;

  // Substitute eta_{N-1} = total - sum of the others; result uses only the
  // first N-1 coordinates. Two representations of the same function on the
  // simplex reduce to identical canonical forms.
  PolyFunction reduced(const Rational& total) const;
  bool equals_on_simplex(const PolyFunction& other, const Rational& total) const;

  std::string to_json() const;
  static PolyFunction from_json(const std::string& text);

 private:
  int n_ = 0;
  std::map<MultiIndex, Rational> terms_;
};

PolyFunction operator+(const PolyFunction& a, const PolyFunction& b);
PolyFunction operator-(const PolyFunction& a, const PolyFunction& b);
PolyFunction operator*(const PolyFunction& a, const PolyFunction& b);
PolyFunction operator*(const Rational& s, const PolyFunction& a);

PolyFunction apply_permutation(const PolyFunction& f, std::span<const int> perm);

// E[f] and <f,g> = E[f g] under the uniform simplex measure of the oracle.
Rational expectation(const PolyFunction& f, const MomentOracle& oracle);
Rational inner_product(const PolyFunction& f, const PolyFunction& g, const MomentOracle& oracle);

// [f]^{(i,j)}: average of f over the uniform repartition of eta_i + eta_j;
// equals the conditional expectation of f given the other coordinates.
// Exact, degree preserving, symmetric in (i,j), idempotent.
PolyFunction pair_average(const PolyFunction& f, int i, int j);

// P_k f = E[f | eta_k], returned as a polynomial in eta_k alone (and as an
// N-variable embedding). Orthogonal projection.
Poly1 conditional_given_one(const PolyFunction& f, int k, const MomentOracle& oracle);
PolyFunction conditional_pk(const PolyFunction& f, int k, const MomentOracle& oracle);

// E[f | eta_i + eta_j = s] as a polynomial in s. Conditionally on the pair
// sum, the split is uniform and the remaining coordinates form a smaller
// simplex with total N*E - s.
Poly1 conditional_given_pair_sum(const PolyFunction& f, int i, int j, const MomentOracle& oracle);

// Correlation operator K phi(eta) = E[phi(eta_1) | eta_N = eta] on the
// marginal space; monomial action K x^n = (N-eta)^n n!(N-2)!/(n+N-2)!.
Poly1 correlation_K(const Poly1& phi, int n_particles);

// kappa_n = (-1)^n n!(N-2)!/(n+N-2)!
Rational correlation_eigenvalue(int n, int n_particles);

// ∫ p dnu with the marginal of mean energy E (moments scale as E^k).
Rational marginal_moment_e(int n_particles, int k, const Rational& mean_energy);
Rational nu_integral(const Poly1& p, int n_particles, const Rational& mean_energy = Rational(1));
Rational nu_inner(const Poly1& a, const Poly1& b, int n_particles,
                  const Rational& mean_energy = Rational(1));

}  // namespace xchg
