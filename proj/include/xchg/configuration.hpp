#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace xchg {

// A point of the energy simplex: N nonnegative energies with fixed mean.
// Immutable after construction; mutating operations return new values.
class Configuration {
 public:
  Configuration(std::vector<double> energies, double mean_energy);

  int n() const { return static_cast<int>(energies_.size()); }
  double mean_energy() const { return mean_energy_; }
  double total() const { return mean_energy_ * n(); }
  double operator[](int i) const { return energies_[static_cast<std::size_t>(i)]; }
  std::span<const double> energies() const { return energies_; }

  static constexpr double kMeanTolerance = 1e-12;

 private:
  std::vector<double> energies_;
  double mean_energy_;
};

struct ModelParams {
  double gamma = 0.5;            // exchange-rate exponent, in [0,1]
  int n_particles = 3;
  double mean_energy = 1.0;
  std::uint64_t rng_seed = 0;
  double abs_tol = 1e-10;
  int max_degree = 3;

  void validate() const;  // throws std::invalid_argument
};

}  // namespace xchg
