#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "xchg/configuration.hpp"
#include "xchg/galerkin.hpp"
#include "xchg/poly.hpp"
#include "xchg/rng.hpp"

namespace xchg {

struct CollisionEvent {
  double time = 0.0;
  int i = 0;  // i < j
  int j = 1;
  double alpha = 0.0;  // repartition fraction in [0,1]
};

// Event-driven record of one run; replaying the events from the initial
// configuration reproduces every intermediate state.
struct Trajectory {
  Configuration initial;
  std::vector<CollisionEvent> events;
  ModelParams params;
  double t_end = 0.0;
};

// Post-collision state: entries i and j become (1-alpha) eta_i + alpha eta_j
// and alpha eta_i + (1-alpha) eta_j; their sum is preserved.
Configuration collide(const Configuration& config, int i, int j, double alpha);

// Rates in lexicographic pair order (0,1), (0,2), ..., and their sum
// Lambda = N (N choose 2)^{-1} sum_{i<j} (eta_i + eta_j)^gamma.
std::vector<double> pair_rates(std::span<const double> energies, double gamma);
double total_rate(const Configuration& config, double gamma);

// Inverse-CDF selection: the index p with cum_{p-1} <= u * sum < cum_p.
std::size_t select_by_rates(std::span<const double> rates, double u);

constexpr std::pair<int, int> pair_from_flat_index(int n, std::size_t flat);

// Gillespie simulation: exponential waiting time at the total rate, pair
// picked proportionally to its rate, uniform repartition fraction. The
// running total energy is re-normalized exactly every 10^4 events.
Trajectory simulate(const ModelParams& params, const Configuration& initial, double t_end,
                    RngStream& rng);

std::vector<Configuration> replay(const Trajectory& trajectory);

double time_average(const Trajectory& trajectory, const PolyFunction& observable);
std::vector<double> time_average_batches(const Trajectory& trajectory,
                                         const PolyFunction& observable, int n_batches);

// Line-oriented export: a JSON header line (params, seed, initial state)
// followed by `time,i,j,alpha` rows; doubles carry 17 significant digits so
// replay is bit exact.
void write_trajectory(std::ostream& out, const Trajectory& trajectory);
Trajectory read_trajectory(std::istream& in);

struct AutocorrelationOptions {
  double dt = 0.05;
  int max_lags = 60;
  int bootstrap_rounds = 200;
  long min_effective_samples = 500;
  double correlation_floor = 0.1;
  std::uint64_t bootstrap_seed = 77;
};

// Decay-rate estimate of the equilibrium autocorrelation of one centered
// observable: pooled correlation over the trajectories, least-squares slope
// of its logarithm over an automatically selected window, bootstrap
// confidence interval over trajectories. The rate bounds the spectral gap
// from above only when the observable overlaps the gap eigenspace, and the
// report says so.
SpectralReport autocorrelation_gap(const std::vector<Trajectory>& trajectories,
                                   const PolyFunction& observable,
                                   const AutocorrelationOptions& options = {});

constexpr std::pair<int, int> pair_from_flat_index(int n, std::size_t flat) {
  int i = 0;
  std::size_t block = static_cast<std::size_t>(n - 1);
  while (flat >= block) {
    flat -= block;
    ++i;
    --block;
  }
  return {i, i + 1 + static_cast<int>(flat)};
}

}  // namespace xchg
