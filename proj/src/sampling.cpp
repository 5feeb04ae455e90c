#include "xchg/sampling.hpp"

#include <stdexcept>
#include <vector>

namespace xchg {

namespace {
Configuration normalize_to_simplex(std::vector<double> draws, int n, double mean_energy) {
  double sum = 0.0;
  for (double d : draws) sum += d;
  if (!(sum > 0.0)) throw std::runtime_error("degenerate sampler draw (zero total)");
  const double scale = static_cast<double>(n) * mean_energy / sum;
  for (double& d : draws) d *= scale;
  return Configuration(std::move(draws), mean_energy);
}
}  // namespace

Configuration sample_uniform(const ModelParams& params, RngStream& rng) {
  params.validate();
  std::vector<double> draws(static_cast<std::size_t>(params.n_particles));
  for (double& d : draws) d = rng.std_exponential();
  return normalize_to_simplex(std::move(draws), params.n_particles, params.mean_energy);
}

Configuration sample_gamma_dirichlet(double alpha, const ModelParams& params, RngStream& rng) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  params.validate();
  std::vector<double> draws(static_cast<std::size_t>(params.n_particles));
  for (double& d : draws) d = rng.gamma(alpha);
  return normalize_to_simplex(std::move(draws), params.n_particles, params.mean_energy);
}

Configuration slice_map(double eta, const Configuration& xi) {
  const int n = xi.n() + 1;
  if (eta < 0.0 || eta > static_cast<double>(n)) {
    throw std::domain_error("slice_map: eta outside [0,N]");
  }
  const double factor = (static_cast<double>(n) - eta) / (n - 1);
  std::vector<double> energies(static_cast<std::size_t>(n));
  for (int j = 0; j < n - 1; ++j) energies[static_cast<std::size_t>(j)] = factor * xi[j];
  energies[static_cast<std::size_t>(n - 1)] = eta;
  return Configuration(std::move(energies), 1.0);
}

Configuration rescale(const Configuration& config, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("rescale: t must be positive");
  std::vector<double> energies(config.energies().begin(), config.energies().end());
  for (double& e : energies) e /= t;
  return Configuration(std::move(energies), config.mean_energy() / t);
}

}  // namespace xchg
