#include "xchg/configuration.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace xchg {

namespace {
double kahan_sum(const std::vector<double>& v) {
  double s = 0.0, c = 0.0;
  for (double x : v) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}
}  // namespace

Configuration::Configuration(std::vector<double> energies, double mean_energy)
    : energies_(std::move(energies)), mean_energy_(mean_energy) {
  if (energies_.size() < 2) throw std::invalid_argument("Configuration needs at least 2 particles");
  if (!(mean_energy_ > 0.0)) throw std::invalid_argument("mean energy must be positive");
  for (double e : energies_) {
    if (!(e >= 0.0)) throw std::invalid_argument("negative energy entry");
  }
  const double n = static_cast<double>(energies_.size());
  const double mean = kahan_sum(energies_) / n;
  if (std::abs(mean - mean_energy_) > kMeanTolerance * std::max(1.0, mean_energy_)) {
    throw std::invalid_argument("energies are off the simplex: mean " + std::to_string(mean) +
                                " vs " + std::to_string(mean_energy_));
  }
}

void ModelParams::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0,1]");
  if (n_particles < 2) throw std::invalid_argument("need at least 2 particles");
  if (!(mean_energy > 0.0)) throw std::invalid_argument("mean energy must be positive");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
  if (max_degree < 1) throw std::invalid_argument("max_degree must be at least 1");
}

}  // namespace xchg
