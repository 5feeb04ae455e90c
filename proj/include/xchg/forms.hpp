#pragma once

#include "xchg/poly.hpp"

namespace xchg {

// E[ s^p ] for s = eta_i + eta_j under the uniform simplex measure; real
// p >= 0. s/(N E) is Beta(2, N-2) distributed (constant for N = 2).
double pair_sum_moment(int n_particles, double p, double mean_energy = 1.0);

// ∫ ((N-eta)/(N-1))^gamma eta^m dnu_N(eta), mean energy 1, real gamma.
double nu_weight_integral(int n_particles, double gamma, int m);

// Power weight for gamma in {0,1}: constant 1 and (N-eta)/(N-1).
Poly1 weight_poly01(int n_particles, int gamma01);

// Quadratic minorant of the power weight:
//   m(eta) = 1 + gamma (1-eta)/(N-1) - (1-gamma) ((1-eta)/(N-1))^2.
Poly1 minorant_poly(int n_particles, const Rational& gamma);

// Dirichlet form of the exchange generator, bilinear:
//   E(f,g) = N (N choose 2)^{-1} sum_{i<j} E[(eta_i+eta_j)^gamma
//                                            (f - [f]^{(i,j)})(g - [g]^{(i,j)})].
// Exact rational for gamma in {0,1}; for gamma in (0,1) each pair term is
// reduced to a one-dimensional beta-type integral in s = eta_i + eta_j.
Rational dirichlet_form_exact(const PolyFunction& f, const PolyFunction& g, int gamma01,
                              const MomentOracle& oracle);
double dirichlet_form(const PolyFunction& f, const PolyFunction& g, double gamma,
                      const MomentOracle& oracle);

// Frozen-coordinate quadratic form (mean energy 1):
//   G(f,g) = (1/N) sum_k E[ w_gamma(eta_k) (f - P_k f)(g - P_k g) ].
Rational form_G_exact(const PolyFunction& f, const PolyFunction& g, int gamma01,
                      const MomentOracle& oracle);
double form_G(const PolyFunction& f, const PolyFunction& g, double gamma,
              const MomentOracle& oracle);

// Same form with the quadratic minorant as weight; exact for every gamma.
Rational form_G_tilde(const PolyFunction& f, const PolyFunction& g, const Rational& gamma,
                      const MomentOracle& oracle);

// <f, P^(gamma) g> = (1/N) sum_k E[ w_gamma(eta_k) (P_k f)(P_k g) ] and the
// minorant-weighted analogue.
double p_gamma_inner(const PolyFunction& f, const PolyFunction& g, double gamma,
                     const MomentOracle& oracle);
Rational p_tilde_inner(const PolyFunction& f, const PolyFunction& g, const Rational& gamma,
                       const MomentOracle& oracle);

}  // namespace xchg
