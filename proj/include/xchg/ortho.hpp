#pragma once

#include <string>
#include <vector>

#include "xchg/poly.hpp"

namespace xchg {

// Orthogonal polynomials of the single-coordinate marginal law, produced by
// exact rational Gram-Schmidt on the monomials. Stored monic (leading
// coefficient 1 > 0) together with exact squared norms, so every projection
// stays rational; the orthonormal family is monic[k] / sqrt(sq_norm[k]).
struct OrthoPolyBasis {
  int n_particles = 0;
  Rational mean_energy{1};
  std::vector<Poly1> monic;      // monic[k] has degree k
  std::vector<Rational> sq_norm; // <monic[k], monic[k]> under nu

  int max_degree() const { return static_cast<int>(monic.size()) - 1; }
  double eval_normalized(int k, double eta) const;
  // coefficient <phi_k, p> / ||phi_k||^2 of p along monic[k]
  Rational monic_coefficient(const Poly1& p, int k) const;
};

OrthoPolyBasis build_ortho_basis(int n_particles, int max_degree,
                                 const Rational& mean_energy = Rational(1));

// Process-wide cache (read-mostly, thread safe), keyed by (N, degree) at
// mean energy 1.
const OrthoPolyBasis& ortho_basis(int n_particles, int max_degree);

struct KSpectrumReport {
  int n_particles = 0;
  int max_degree = 0;
  bool exact_eigen_pass = false;   // K phi_n == kappa_n phi_n as rationals
  bool monotone_pass = false;      // |kappa_{n+1}| <= |kappa_n|
  std::vector<Rational> kappa;
  std::string note;
  bool pass() const { return exact_eigen_pass && monotone_pass; }
};

KSpectrumReport verify_K_spectrum(int n_particles, int max_degree);

}  // namespace xchg
