#include "xchg/forms.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace xchg {

namespace {

std::set<int> support_of(const PolyFunction& f) {
  std::set<int> s;
  for (const auto& [idx, c] : f.terms()) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (idx[j] > 0) s.insert(static_cast<int>(j));
    }
  }
  return s;
}

void require_unit_energy(const MomentOracle& oracle, const char* who) {
  if (oracle.mean_energy() != 1)
    throw std::invalid_argument(std::string(who) + ": defined at mean energy 1");
}

}  // namespace

double pair_sum_moment(int n_particles, double p, double mean_energy) {
  if (p < 0.0) throw std::invalid_argument("pair_sum_moment: negative exponent");
  const double ne = n_particles * mean_energy;
  if (n_particles == 2) return std::pow(ne, p);
  const double n = static_cast<double>(n_particles);
  // (N E)^p * Gamma(N) Gamma(p+2) / Gamma(p+N)
  return std::pow(ne, p) * std::exp(std::lgamma(n) + std::lgamma(p + 2.0) - std::lgamma(p + n));
}

double nu_weight_integral(int n_particles, double gamma, int m) {
  const double n = static_cast<double>(n_particles);
  // (N/(N-1))^gamma N^m (N-1) B(m+1, gamma+N-1)
  return std::pow(n / (n - 1.0), gamma) * std::pow(n, m) * (n - 1.0) *
         std::exp(std::lgamma(m + 1.0) + std::lgamma(gamma + n - 1.0) -
                  std::lgamma(gamma + n + m));
}

Poly1 weight_poly01(int n_particles, int gamma01) {
  if (gamma01 == 0) return Poly1(std::vector<Rational>{Rational(1)});
  if (gamma01 == 1)
    return Poly1(std::vector<Rational>{Rational(n_particles, n_particles - 1),
                                       Rational(-1, n_particles - 1)});
  throw std::invalid_argument("weight_poly01: gamma must be 0 or 1");
}

Poly1 minorant_poly(int n_particles, const Rational& gamma) {
  const Rational a(1, n_particles - 1);
  const Rational one_minus(Rational(1) - gamma);
  // 1 + gamma a (1 - eta) - (1-gamma) a^2 (1 - eta)^2
  std::vector<Rational> c(3, Rational(0));
  c[0] = Rational(1) + gamma * a - one_minus * a * a;
  c[1] = -gamma * a + 2 * one_minus * a * a;
  c[2] = -one_minus * a * a;
  return Poly1(std::move(c));
}

Rational dirichlet_form_exact(const PolyFunction& f, const PolyFunction& g, int gamma01,
                              const MomentOracle& oracle) {
  if (gamma01 != 0 && gamma01 != 1)
    throw std::invalid_argument("dirichlet_form_exact: gamma must be 0 or 1");
  const int n = f.n();
  const auto sup_f = support_of(f);
  const auto sup_g = support_of(g);
  Rational sum(0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool touches_f = sup_f.count(i) || sup_f.count(j);
      const bool touches_g = sup_g.count(i) || sup_g.count(j);
      if (!touches_f || !touches_g) continue;  // a pair average fixes either factor
      PolyFunction df = f - pair_average(f, i, j);
      PolyFunction dg = g - pair_average(g, i, j);
      PolyFunction integrand = df * dg;
      if (gamma01 == 1) {
        integrand = integrand *
                    (PolyFunction::coordinate(n, i) + PolyFunction::coordinate(n, j));
      }
      sum += expectation(integrand, oracle);
    }
  }
  return Rational(2, n - 1) * sum;  // N / (N choose 2)
}

double dirichlet_form(const PolyFunction& f, const PolyFunction& g, double gamma,
                      const MomentOracle& oracle) {
  if (gamma == 0.0) return to_double(dirichlet_form_exact(f, g, 0, oracle));
  if (gamma == 1.0) return to_double(dirichlet_form_exact(f, g, 1, oracle));
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("dirichlet_form: gamma outside [0,1]");
  const int n = f.n();
  const double mean_energy = to_double(oracle.mean_energy());
  const auto sup_f = support_of(f);
  const auto sup_g = support_of(g);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool touches_f = sup_f.count(i) || sup_f.count(j);
      const bool touches_g = sup_g.count(i) || sup_g.count(j);
      if (!touches_f || !touches_g) continue;
      PolyFunction df = f - pair_average(f, i, j);
      PolyFunction dg = g - pair_average(g, i, j);
      Poly1 q = conditional_given_pair_sum(df * dg, i, j, oracle);
      for (int m = 0; m <= q.degree(); ++m) {
        const Rational& c = q.c[static_cast<std::size_t>(m)];
        if (c == 0) continue;
        sum += to_double(c) * pair_sum_moment(n, gamma + m, mean_energy);
      }
    }
  }
  return 2.0 / (n - 1) * sum;
}

namespace {

// (1/N) sum_k  ∫ weight(eta) * [ E[fg | eta_k] - (P_k f)(P_k g) ](eta) dnu(eta)
// with an exact rational weight polynomial.
Rational frozen_form_with_weight(const PolyFunction& f, const PolyFunction& g,
                                 const Poly1& weight, const MomentOracle& oracle) {
  const int n = f.n();
  const PolyFunction fg = f * g;
  Rational sum(0);
  for (int k = 0; k < n; ++k) {
    Poly1 cond = conditional_given_one(fg, k, oracle);
    Poly1 pf = conditional_given_one(f, k, oracle);
    Poly1 pg = conditional_given_one(g, k, oracle);
    sum += nu_integral(weight * (cond - pf * pg), n);
  }
  return Rational(1, n) * sum;
}

Rational frozen_inner_with_weight(const PolyFunction& f, const PolyFunction& g,
                                  const Poly1& weight, const MomentOracle& oracle) {
  const int n = f.n();
  Rational sum(0);
  for (int k = 0; k < n; ++k) {
    Poly1 pf = conditional_given_one(f, k, oracle);
    Poly1 pg = conditional_given_one(g, k, oracle);
    sum += nu_integral(weight * pf * pg, n);
  }
  return Rational(1, n) * sum;
}

}  // namespace

Rational form_G_exact(const PolyFunction& f, const PolyFunction& g, int gamma01,
                      const MomentOracle& oracle) {
  require_unit_energy(oracle, "form_G_exact");
  return frozen_form_with_weight(f, g, weight_poly01(f.n(), gamma01), oracle);
}

double form_G(const PolyFunction& f, const PolyFunction& g, double gamma,
              const MomentOracle& oracle) {
  require_unit_energy(oracle, "form_G");
  if (gamma == 0.0) return to_double(form_G_exact(f, g, 0, oracle));
  if (gamma == 1.0) return to_double(form_G_exact(f, g, 1, oracle));
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("form_G: gamma outside [0,1]");
  const int n = f.n();
  const PolyFunction fg = f * g;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    Poly1 q = conditional_given_one(fg, k, oracle) -
              conditional_given_one(f, k, oracle) * conditional_given_one(g, k, oracle);
    for (int m = 0; m <= q.degree(); ++m) {
      const Rational& c = q.c[static_cast<std::size_t>(m)];
      if (c == 0) continue;
      sum += to_double(c) * nu_weight_integral(n, gamma, m);
    }
  }
  return sum / n;
}

Rational form_G_tilde(const PolyFunction& f, const PolyFunction& g, const Rational& gamma,
                      const MomentOracle& oracle) {
  require_unit_energy(oracle, "form_G_tilde");
  if (gamma < 0 || gamma > 1) throw std::invalid_argument("form_G_tilde: gamma outside [0,1]");
  return frozen_form_with_weight(f, g, minorant_poly(f.n(), gamma), oracle);
}

double p_gamma_inner(const PolyFunction& f, const PolyFunction& g, double gamma,
                     const MomentOracle& oracle) {
  require_unit_energy(oracle, "p_gamma_inner");
  if (gamma == 0.0 || gamma == 1.0) {
    return to_double(
        frozen_inner_with_weight(f, g, weight_poly01(f.n(), static_cast<int>(gamma)), oracle));
  }
  const int n = f.n();
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    Poly1 q = conditional_given_one(f, k, oracle) * conditional_given_one(g, k, oracle);
    for (int m = 0; m <= q.degree(); ++m) {
      const Rational& c = q.c[static_cast<std::size_t>(m)];
      if (c == 0) continue;
      sum += to_double(c) * nu_weight_integral(n, gamma, m);
    }
  }
  return sum / n;
}

Rational p_tilde_inner(const PolyFunction& f, const PolyFunction& g, const Rational& gamma,
                       const MomentOracle& oracle) {
  require_unit_energy(oracle, "p_tilde_inner");
  return frozen_inner_with_weight(f, g, minorant_poly(f.n(), gamma), oracle);
}

}  // namespace xchg
