#pragma once

#include "xchg/configuration.hpp"
#include "xchg/rng.hpp"

namespace xchg {

// Exact equilibrium sampler: N i.i.d. standard exponentials normalized to
// total N*E give the uniform measure on the simplex.
Configuration sample_uniform(const ModelParams& params, RngStream& rng);

// Conditioned Gamma(alpha,1) product measure on the simplex; alpha = 1
// reduces to sample_uniform.
Configuration sample_gamma_dirichlet(double alpha, const ModelParams& params, RngStream& rng);

// Build an N-particle configuration at mean 1 from one coordinate value and
// an (N-1)-particle configuration at mean 1:
//   (eta, xi) -> ( (N-eta)/(N-1) * xi_1, ..., (N-eta)/(N-1) * xi_{N-1}, eta ).
// Push-forward of marginal x uniform equals uniform (tested statistically).
Configuration slice_map(double eta, const Configuration& xi);

// eta -> eta / t; the mean energy becomes E / t.
Configuration rescale(const Configuration& config, double t);

}  // namespace xchg
