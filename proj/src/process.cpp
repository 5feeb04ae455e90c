#include "xchg/process.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "xchg/stats.hpp"

namespace xchg {

namespace {

void apply_collision(std::vector<double>& eta, int i, int j, double alpha) {
  // uniform repartition: particle i keeps the (1-alpha) share of the pair sum
  const double s = eta[static_cast<std::size_t>(i)] + eta[static_cast<std::size_t>(j)];
  double a = (1.0 - alpha) * s;
  double b = s - a;
  b += s - (a + b);  // one fix-up step keeps the pair sum exact to rounding
  if (a < 0.0) a = 0.0;
  if (b < 0.0) b = 0.0;
  eta[static_cast<std::size_t>(i)] = a;
  eta[static_cast<std::size_t>(j)] = b;
}

void renormalize(std::vector<double>& eta, double target_total) {
  double sum = 0.0;
  for (double e : eta) sum += e;
  if (sum <= 0.0) throw std::runtime_error("simulate: total energy collapsed");
  const double scale = target_total / sum;
  for (double& e : eta) e *= scale;
}

}  // namespace

Configuration collide(const Configuration& config, int i, int j, double alpha) {
  const int n = config.n();
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw std::out_of_range("collide: bad pair indices");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("collide: alpha outside [0,1]");
  std::vector<double> eta(config.energies().begin(), config.energies().end());
  apply_collision(eta, i, j, alpha);
  return Configuration(std::move(eta), config.mean_energy());
}

std::vector<double> pair_rates(std::span<const double> energies, double gamma) {
  const int n = static_cast<int>(energies.size());
  const double prefactor = 2.0 / (n - 1);  // N / (N choose 2)
  std::vector<double> rates;
  rates.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double s = energies[static_cast<std::size_t>(i)] + energies[static_cast<std::size_t>(j)];
      rates.push_back(prefactor * (gamma == 0.0 ? 1.0 : std::pow(s, gamma)));
    }
  }
  return rates;
}

double total_rate(const Configuration& config, double gamma) {
  double sum = 0.0;
  for (double r : pair_rates(config.energies(), gamma)) sum += r;
  return sum;
}

std::size_t select_by_rates(std::span<const double> rates, double u) {
  double sum = 0.0;
  for (double r : rates) sum += r;
  const double target = u * sum;
  double cum = 0.0;
  for (std::size_t p = 0; p < rates.size(); ++p) {
    cum += rates[p];
    if (target < cum) return p;
  }
  return rates.size() - 1;  // u == 1 edge
}

Trajectory simulate(const ModelParams& params, const Configuration& initial, double t_end,
                    RngStream& rng) {
  params.validate();
  if (!(t_end > 0.0)) throw std::invalid_argument("simulate: t_end must be positive");
  if (initial.n() != params.n_particles)
    throw std::invalid_argument("simulate: initial state size mismatch");

  Trajectory traj{initial, {}, params, t_end};
  std::vector<double> eta(initial.energies().begin(), initial.energies().end());
  const double target_total = initial.total();
  double t = 0.0;
  long events_since_renormalize = 0;

  while (true) {
    const std::vector<double> rates = pair_rates(eta, params.gamma);
    double lambda = 0.0;
    for (double r : rates) lambda += r;
    if (!(lambda > 0.0)) break;  // cannot happen on the simplex, but stay safe
    t += rng.exponential(lambda);
    if (t > t_end) break;
    const std::size_t flat = select_by_rates(rates, rng.uniform());
    const auto [i, j] = pair_from_flat_index(params.n_particles, flat);
    const double alpha = rng.uniform();
    apply_collision(eta, i, j, alpha);
    traj.events.push_back({t, i, j, alpha});
    if (++events_since_renormalize == 10000) {
      renormalize(eta, target_total);
      events_since_renormalize = 0;
    }
  }
  return traj;
}

std::vector<Configuration> replay(const Trajectory& trajectory) {
  std::vector<Configuration> states;
  states.reserve(trajectory.events.size() + 1);
  states.push_back(trajectory.initial);
  std::vector<double> eta(trajectory.initial.energies().begin(),
                          trajectory.initial.energies().end());
  double prev_time = 0.0;
  for (const CollisionEvent& e : trajectory.events) {
    if (e.time <= prev_time) throw std::runtime_error("replay: event times not increasing");
    prev_time = e.time;
    apply_collision(eta, e.i, e.j, e.alpha);
    states.emplace_back(eta, trajectory.initial.mean_energy());
  }
  return states;
}

double time_average(const Trajectory& trajectory, const PolyFunction& observable) {
  std::vector<double> eta(trajectory.initial.energies().begin(),
                          trajectory.initial.energies().end());
  double acc = 0.0;
  double prev = 0.0;
  for (const CollisionEvent& e : trajectory.events) {
    acc += observable.eval(eta) * (e.time - prev);
    prev = e.time;
    apply_collision(eta, e.i, e.j, e.alpha);
  }
  acc += observable.eval(eta) * (trajectory.t_end - prev);
  return acc / trajectory.t_end;
}

std::vector<double> time_average_batches(const Trajectory& trajectory,
                                         const PolyFunction& observable, int n_batches) {
  if (n_batches < 1) throw std::invalid_argument("time_average_batches: need >= 1 batch");
  std::vector<double> eta(trajectory.initial.energies().begin(),
                          trajectory.initial.energies().end());
  std::vector<double> batch(static_cast<std::size_t>(n_batches), 0.0);
  const double width = trajectory.t_end / n_batches;
  double prev = 0.0;
  auto deposit = [&](double from, double to, double value) {
    // spread value over [from, to) across batch windows
    while (from < to) {
      int b = std::min(n_batches - 1, static_cast<int>(from / width));
      const double edge = std::min(to, (b + 1) * width);
      batch[static_cast<std::size_t>(b)] += value * (edge - from);
      from = edge;
    }
  };
  for (const CollisionEvent& e : trajectory.events) {
    deposit(prev, e.time, observable.eval(eta));
    prev = e.time;
    apply_collision(eta, e.i, e.j, e.alpha);
  }
  deposit(prev, trajectory.t_end, observable.eval(eta));
  for (double& b : batch) b /= width;
  return batch;
}

void write_trajectory(std::ostream& out, const Trajectory& trajectory) {
  nlohmann::json header;
  header["version"] = 1;
  header["gamma"] = trajectory.params.gamma;
  header["n"] = trajectory.params.n_particles;
  header["mean_energy"] = trajectory.params.mean_energy;
  header["seed"] = trajectory.params.rng_seed;
  header["t_end"] = trajectory.t_end;
  header["initial"] = std::vector<double>(trajectory.initial.energies().begin(),
                                          trajectory.initial.energies().end());
  out << "# " << header.dump() << '\n';
  out << "time,i,j,alpha\n";
  out.precision(17);
  for (const CollisionEvent& e : trajectory.events) {
    out << e.time << ',' << e.i << ',' << e.j << ',' << e.alpha << '\n';
  }
}

Trajectory read_trajectory(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    throw std::runtime_error("read_trajectory: missing header line");
  nlohmann::json header = nlohmann::json::parse(line.substr(2));
  ModelParams params;
  params.gamma = header.at("gamma").get<double>();
  params.n_particles = header.at("n").get<int>();
  params.mean_energy = header.at("mean_energy").get<double>();
  params.rng_seed = header.at("seed").get<std::uint64_t>();
  Configuration initial(header.at("initial").get<std::vector<double>>(), params.mean_energy);
  Trajectory traj{std::move(initial), {}, params, header.at("t_end").get<double>()};
  if (!std::getline(in, line) || line != "time,i,j,alpha")
    throw std::runtime_error("read_trajectory: missing column header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    CollisionEvent e;
    std::istringstream row(line);
    std::string field;
    std::getline(row, field, ',');
    e.time = std::stod(field);
    std::getline(row, field, ',');
    e.i = std::stoi(field);
    std::getline(row, field, ',');
    e.j = std::stoi(field);
    std::getline(row, field, ',');
    e.alpha = std::stod(field);
    traj.events.push_back(e);
  }
  return traj;
}

namespace {

// Observable series on a uniform grid; states are piecewise constant.
std::vector<double> sample_series(const Trajectory& traj, const PolyFunction& obs, double dt) {
  std::vector<double> series;
  std::vector<double> eta(traj.initial.energies().begin(), traj.initial.energies().end());
  std::size_t next_event = 0;
  for (double t = 0.0; t <= traj.t_end + 1e-12; t += dt) {
    while (next_event < traj.events.size() && traj.events[next_event].time <= t) {
      const CollisionEvent& e = traj.events[next_event];
      apply_collision(eta, e.i, e.j, e.alpha);
      ++next_event;
    }
    series.push_back(obs.eval(eta));
  }
  return series;
}

struct TrajStats {
  std::vector<double> cross;  // sum_t x_t x_{t+l}
  std::vector<long> counts;
  double sum = 0.0;
  long n = 0;
};

}  // namespace

SpectralReport autocorrelation_gap(const std::vector<Trajectory>& trajectories,
                                   const PolyFunction& observable,
                                   const AutocorrelationOptions& options) {
  if (trajectories.empty()) throw std::runtime_error("autocorrelation_gap: no trajectories");
  const int lags = options.max_lags;

  // Per-trajectory sufficient statistics, so the bootstrap can resample.
  std::vector<TrajStats> stats;
  stats.reserve(trajectories.size());
  double grand_sum = 0.0;
  long grand_n = 0;
  for (const Trajectory& traj : trajectories) {
    std::vector<double> x = sample_series(traj, observable, options.dt);
    TrajStats ts;
    ts.cross.assign(static_cast<std::size_t>(lags) + 1, 0.0);
    ts.counts.assign(static_cast<std::size_t>(lags) + 1, 0);
    for (std::size_t t = 0; t < x.size(); ++t) {
      ts.sum += x[t];
      ++ts.n;
      for (int l = 0; l <= lags && t + static_cast<std::size_t>(l) < x.size(); ++l) {
        ts.cross[static_cast<std::size_t>(l)] += x[t] * x[t + static_cast<std::size_t>(l)];
        ++ts.counts[static_cast<std::size_t>(l)];
      }
    }
    grand_sum += ts.sum;
    grand_n += ts.n;
    stats.push_back(std::move(ts));
  }
  if (grand_n < options.min_effective_samples)
    throw std::runtime_error("autocorrelation_gap: insufficient data");
  const double mean = grand_sum / static_cast<double>(grand_n);

  auto fit_rate = [&](const std::vector<const TrajStats*>& sample) -> double {
    std::vector<double> rho(static_cast<std::size_t>(lags) + 1, 0.0);
    std::vector<double> num(static_cast<std::size_t>(lags) + 1, 0.0);
    std::vector<long> cnt(static_cast<std::size_t>(lags) + 1, 0);
    for (const TrajStats* ts : sample) {
      for (int l = 0; l <= lags; ++l) {
        num[static_cast<std::size_t>(l)] += ts->cross[static_cast<std::size_t>(l)];
        cnt[static_cast<std::size_t>(l)] += ts->counts[static_cast<std::size_t>(l)];
      }
    }
    for (int l = 0; l <= lags; ++l) {
      if (cnt[static_cast<std::size_t>(l)] == 0) break;
      rho[static_cast<std::size_t>(l)] =
          num[static_cast<std::size_t>(l)] / static_cast<double>(cnt[static_cast<std::size_t>(l)]) -
          mean * mean;
    }
    const double r0 = rho[0];
    if (!(r0 > 0.0)) throw std::runtime_error("autocorrelation_gap: flat observable");
    // usable window: correlations above the noise floor
    int last = 0;
    for (int l = 1; l <= lags; ++l) {
      if (rho[static_cast<std::size_t>(l)] / r0 > options.correlation_floor &&
          cnt[static_cast<std::size_t>(l)] > 0) {
        last = l;
      } else {
        break;
      }
    }
    if (last < 2) throw std::runtime_error("autocorrelation_gap: correlation decays below floor "
                                           "within two lags; decrease dt");
    std::vector<double> xs, ys, slopes;
    for (int l = 0; l <= last; ++l) {
      xs.push_back(l * options.dt);
      ys.push_back(std::log(rho[static_cast<std::size_t>(l)] / r0));
    }
    // local-slope plateau: drop trailing lags whose local slope strays from
    // the median by more than 50%
    for (std::size_t k = 1; k + 1 < xs.size(); ++k)
      slopes.push_back((ys[k + 1] - ys[k - 1]) / (2.0 * options.dt));
    int keep = last;
    if (!slopes.empty()) {
      std::vector<double> sorted = slopes;
      std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
      const double med = sorted[sorted.size() / 2];
      for (std::size_t k = 0; k < slopes.size(); ++k) {
        if (std::abs(slopes[k] - med) > 0.5 * std::abs(med)) {
          keep = static_cast<int>(k) + 1;
          break;
        }
      }
      keep = std::max(keep, 2);
    }
    xs.resize(static_cast<std::size_t>(keep) + 1);
    ys.resize(static_cast<std::size_t>(keep) + 1);
    return -ols_fit(xs, ys).slope;
  };

  std::vector<const TrajStats*> all;
  all.reserve(stats.size());
  for (const TrajStats& ts : stats) all.push_back(&ts);
  const double rate = fit_rate(all);

  SpectralReport rep;
  const ModelParams& p = trajectories.front().params;
  rep.gamma = p.gamma;
  rep.n_particles = p.n_particles;
  rep.mean_energy = p.mean_energy;
  rep.method = "autocorrelation";
  rep.degree = 0;
  rep.dof = static_cast<int>(trajectories.size());
  rep.value = rate;
  if (stats.size() >= 2 && options.bootstrap_rounds > 0) {
    RngStream rng(options.bootstrap_seed);
    std::vector<double> draws;
    for (int b = 0; b < options.bootstrap_rounds; ++b) {
      std::vector<const TrajStats*> sample;
      sample.reserve(stats.size());
      for (std::size_t k = 0; k < stats.size(); ++k) {
        sample.push_back(&stats[static_cast<std::size_t>(rng.bits() % stats.size())]);
      }
      try {
        draws.push_back(fit_rate(sample));
      } catch (const std::runtime_error&) {
        // a resample may lose the usable window; skip it
      }
    }
    if (draws.size() >= 20) {
      std::sort(draws.begin(), draws.end());
      rep.lower = std::min(
          rep.value, draws[static_cast<std::size_t>(0.025 * static_cast<double>(draws.size()))]);
      rep.upper = std::max(
          rep.value,
          draws[static_cast<std::size_t>(0.975 * static_cast<double>(draws.size() - 1))]);
    }
  }
  rep.notes =
      "decay rate of one observable (bootstrap CI); equals the spectral gap only when the "
      "observable overlaps the gap eigenspace, otherwise exceeds it; heuristic, not a bound";
  return rep;
}

}  // namespace xchg
