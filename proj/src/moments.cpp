#include "xchg/moments.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>
#include <stdexcept>

namespace xchg {

MomentOracle::MomentOracle(int n_particles, Rational mean_energy)
    : n_(n_particles), mean_energy_(std::move(mean_energy)) {
  if (n_ < 1) throw std::invalid_argument("MomentOracle: need at least one particle");
  if (mean_energy_ <= 0) throw std::invalid_argument("MomentOracle: mean energy must be positive");
}

Rational MomentOracle::moment(std::span<const unsigned> exponents) const {
  std::vector<unsigned> key;
  key.reserve(exponents.size());
  for (unsigned a : exponents) {
    if (a > 0) key.push_back(a);
  }
  if (static_cast<int>(key.size()) > n_) {
    throw std::invalid_argument("MomentOracle: more exponents than coordinates");
  }
  std::sort(key.begin(), key.end(), std::greater<unsigned>());
  if (key.empty()) return Rational(1);

  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }

  unsigned total = 0;
  BigInt num_fact = factorial(static_cast<unsigned>(n_ - 1));
  for (unsigned a : key) {
    total += a;
    num_fact *= factorial(a);
  }
  Rational value = pow_rational(Rational(n_) * mean_energy_, total);
  value *= Rational(num_fact, factorial(static_cast<unsigned>(n_ - 1) + total));

  std::unique_lock lock(mutex_);
  return cache_.emplace(std::move(key), std::move(value)).first->second;
}

namespace {
void enumerate_patterns(unsigned remaining, unsigned max_part, std::vector<unsigned>& cur,
                        std::vector<std::vector<unsigned>>& out) {
  out.push_back(cur);
  for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    enumerate_patterns(remaining - p, p, cur, out);
    cur.pop_back();
    if (p == 1) break;
  }
}
}  // namespace

void MomentOracle::dump(std::ostream& out, unsigned max_total_degree) const {
  std::vector<std::vector<unsigned>> patterns;
  std::vector<unsigned> cur;
  enumerate_patterns(max_total_degree, max_total_degree, cur, patterns);
  for (const auto& p : patterns) {
    if (static_cast<int>(p.size()) > n_) continue;
    Rational m = moment(p);
    bool first = true;
    for (unsigned a : p) {
      if (!first) out << ',';
      out << a;
      first = false;
    }
    if (p.empty()) out << "1 (empty)";
    out << " -> " << to_double(m) << " = " << rational_to_string(m) << '\n';
  }
}

MarginalLaw::MarginalLaw(int n_particles) : n_(n_particles) {
  if (n_ < 2) throw std::invalid_argument("MarginalLaw: need at least 2 particles");
}

double MarginalLaw::density(double eta) const {
  if (eta < 0.0 || eta > n_) throw std::domain_error("MarginalLaw: eta outside [0,N]");
  const double nn = static_cast<double>(n_);
  return (nn - 1.0) / nn * std::pow(1.0 - eta / nn, n_ - 2);
}

double MarginalLaw::cdf(double eta) const {
  if (eta < 0.0 || eta > n_) throw std::domain_error("MarginalLaw: eta outside [0,N]");
  return 1.0 - std::pow(1.0 - eta / n_, n_ - 1);
}

double MarginalLaw::inv_cdf(double u) const {
  if (u < 0.0 || u > 1.0) throw std::domain_error("MarginalLaw: u outside [0,1]");
  return n_ * (1.0 - std::pow(1.0 - u, 1.0 / (n_ - 1)));
}

Rational MarginalLaw::moment(int k) const {
  if (k < 0) throw std::invalid_argument("MarginalLaw: negative moment order");
  BigInt num = factorial(static_cast<unsigned>(k)) * factorial(static_cast<unsigned>(n_ - 1));
  return pow_rational(Rational(n_), static_cast<unsigned>(k)) *
         Rational(num, factorial(static_cast<unsigned>(k + n_ - 1)));
}

double conditional_moment(ConditionalMoment which, int n_particles, double eta, double xi) {
  const double nn = static_cast<double>(n_particles);
  if (n_particles < 3) throw std::invalid_argument("conditional_moment: need N >= 3");
  switch (which) {
    case ConditionalMoment::kSecondGivenOne: {
      if (eta < 0.0 || eta > nn) throw std::domain_error("conditioning value outside [0,N]");
      const double r = nn - eta;
      return 2.0 * r * r / (nn * (nn - 1.0));
    }
    case ConditionalMoment::kSecondGivenTwo: {
      if (eta < 0.0 || xi < 0.0 || eta + xi > nn)
        throw std::domain_error("conditioning values outside the simplex");
      const double r = nn - eta - xi;
      return 2.0 * r * r / ((nn - 1.0) * (nn - 2.0));
    }
    case ConditionalMoment::kFourthGivenOne: {
      if (eta < 0.0 || eta > nn) throw std::domain_error("conditioning value outside [0,N]");
      const double r = nn - eta;
      return 24.0 * r * r * r * r / ((nn + 2.0) * (nn + 1.0) * nn * (nn - 1.0));
    }
  }
  throw std::logic_error("conditional_moment: unknown kind");
}

double conditional_moment_cap(ConditionalMoment which) {
  switch (which) {
    case ConditionalMoment::kSecondGivenOne: return 3.0;
    case ConditionalMoment::kSecondGivenTwo: return 9.0;
    case ConditionalMoment::kFourthGivenOne: return 24.0;
  }
  throw std::logic_error("conditional_moment_cap: unknown kind");
}

}  // namespace xchg
