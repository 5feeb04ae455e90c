#include "xchg/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace xchg {

void Poly1::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

const Rational& Poly1::coeff(int k) const {
  static const Rational kZero(0);
  if (k < 0 || k >= static_cast<int>(c.size())) return kZero;
  return c[static_cast<std::size_t>(k)];
}

double Poly1::eval(double x) const {
  double r = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) r = r * x + to_double(c[k]);
  return r;
}

Rational Poly1::eval(const Rational& x) const {
  Rational r(0);
  for (std::size_t k = c.size(); k-- > 0;) r = r * x + c[k];
  return r;
}

Poly1 operator+(const Poly1& a, const Poly1& b) {
  std::vector<Rational> c(std::max(a.c.size(), b.c.size()), Rational(0));
  for (std::size_t k = 0; k < a.c.size(); ++k) c[k] += a.c[k];
  for (std::size_t k = 0; k < b.c.size(); ++k) c[k] += b.c[k];
  return Poly1(std::move(c));
}

Poly1 operator-(const Poly1& a, const Poly1& b) {
  std::vector<Rational> c(std::max(a.c.size(), b.c.size()), Rational(0));
  for (std::size_t k = 0; k < a.c.size(); ++k) c[k] += a.c[k];
  for (std::size_t k = 0; k < b.c.size(); ++k) c[k] -= b.c[k];
  return Poly1(std::move(c));
}

Poly1 operator*(const Poly1& a, const Poly1& b) {
  if (a.is_zero() || b.is_zero()) return Poly1();
  std::vector<Rational> c(a.c.size() + b.c.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  return Poly1(std::move(c));
}

Poly1 operator*(const Rational& s, const Poly1& a) {
  if (s == 0) return Poly1();
  std::vector<Rational> c = a.c;
  for (auto& x : c) x *= s;
  return Poly1(std::move(c));
}

bool operator==(const Poly1& a, const Poly1& b) { return a.c == b.c; }

Poly1 affine_power(const Rational& c0, const Rational& c1, unsigned e) {
  Poly1 r(std::vector<Rational>{Rational(1)});
  Poly1 base(std::vector<Rational>{c0, c1});
  for (unsigned k = 0; k < e; ++k) r = r * base;
  return r;
}

PolyFunction PolyFunction::constant(int n, const Rational& c) {
  PolyFunction f(n);
  f.add_term(MultiIndex(static_cast<std::size_t>(n), 0), c);
  return f;
}

PolyFunction PolyFunction::coordinate(int n, int k) {
  MultiIndex idx(static_cast<std::size_t>(n), 0);
  idx[static_cast<std::size_t>(k)] = 1;
  PolyFunction f(n);
  f.add_term(idx, Rational(1));
  return f;
}

PolyFunction PolyFunction::monomial(int n, const MultiIndex& idx, const Rational& c) {
  if (static_cast<int>(idx.size()) != n) throw std::invalid_argument("monomial: bad index length");
  PolyFunction f(n);
  f.add_term(idx, c);
  return f;
}

PolyFunction PolyFunction::from_univariate(int n, int k, const Poly1& p) {
  PolyFunction f(n);
  for (int d = 0; d <= p.degree(); ++d) {
    if (p.c[static_cast<std::size_t>(d)] == 0) continue;
    MultiIndex idx(static_cast<std::size_t>(n), 0);
    idx[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(d);
    f.add_term(idx, p.c[static_cast<std::size_t>(d)]);
  }
  return f;
}

int PolyFunction::total_degree() const {
  int deg = 0;
  for (const auto& [idx, c] : terms_) {
    int d = 0;
    for (auto e : idx) d += e;
    deg = std::max(deg, d);
  }
  return deg;
}

void PolyFunction::add_term(const MultiIndex& idx, const Rational& c) {
  if (static_cast<int>(idx.size()) != n_) throw std::invalid_argument("add_term: bad index length");
  if (c == 0) return;
  auto it = terms_.find(idx);
  if (it == terms_.end()) {
    terms_.emplace(idx, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

double PolyFunction::eval(std::span<const double> eta) const {
  if (static_cast<int>(eta.size()) != n_) throw std::invalid_argument("eval: bad point length");
  double sum = 0.0;
  for (const auto& [idx, c] : terms_) {
    double t = to_double(c);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      for (int e = 0; e < idx[j]; ++e) t *= eta[j];
    }
    sum += t;
  }
  return sum;
}

PolyFunction PolyFunction::reduced(const Rational& total) const {
  const int last = n_ - 1;
  // linear = total - sum_{j < last} eta_j
  PolyFunction linear = PolyFunction::constant(n_, total);
  for (int j = 0; j < last; ++j) linear = linear - PolyFunction::coordinate(n_, j);

  PolyFunction out(n_);
  std::map<unsigned, PolyFunction> power_cache;
  power_cache.emplace(0u, PolyFunction::constant(n_, Rational(1)));
  for (const auto& [idx, c] : terms_) {
    const unsigned e = idx[static_cast<std::size_t>(last)];
    auto it = power_cache.find(e);
    if (it == power_cache.end()) {
      auto base = power_cache.upper_bound(e);
      --base;  // largest cached power <= e; power 0 is always present
      PolyFunction p = base->second;
      for (unsigned k = base->first; k < e; ++k) p = p * linear;
      it = power_cache.emplace(e, std::move(p)).first;
    }
    MultiIndex base = idx;
    base[static_cast<std::size_t>(last)] = 0;
    for (const auto& [pidx, pc] : it->second.terms()) {
      MultiIndex merged = base;
      for (std::size_t j = 0; j < merged.size(); ++j)
        merged[j] = static_cast<std::uint8_t>(merged[j] + pidx[j]);
      out.add_term(merged, c * pc);
    }
  }
  return out;
}

bool PolyFunction::equals_on_simplex(const PolyFunction& other, const Rational& total) const {
  if (n_ != other.n_) return false;
  return (*this - other).reduced(total).is_zero();
}

PolyFunction operator+(const PolyFunction& a, const PolyFunction& b) {
  if (a.n() != b.n()) throw std::invalid_argument("polynomial arity mismatch");
  PolyFunction r = a;
  for (const auto& [idx, c] : b.terms()) r.add_term(idx, c);
  return r;
}

PolyFunction operator-(const PolyFunction& a, const PolyFunction& b) {
  if (a.n() != b.n()) throw std::invalid_argument("polynomial arity mismatch");
  PolyFunction r = a;
  for (const auto& [idx, c] : b.terms()) r.add_term(idx, -c);
  return r;
}

PolyFunction operator*(const PolyFunction& a, const PolyFunction& b) {
  if (a.n() != b.n()) throw std::invalid_argument("polynomial arity mismatch");
  PolyFunction r(a.n());
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      MultiIndex idx = ia;
      for (std::size_t j = 0; j < idx.size(); ++j)
        idx[j] = static_cast<std::uint8_t>(idx[j] + ib[j]);
      r.add_term(idx, ca * cb);
    }
  }
  return r;
}

PolyFunction operator*(const Rational& s, const PolyFunction& a) {
  PolyFunction r(a.n());
  if (s == 0) return r;
  for (const auto& [idx, c] : a.terms()) r.add_term(idx, s * c);
  return r;
}

PolyFunction apply_permutation(const PolyFunction& f, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != f.n()) throw std::invalid_argument("bad permutation");
  PolyFunction r(f.n());
  for (const auto& [idx, c] : f.terms()) {
    MultiIndex moved(idx.size(), 0);
    for (std::size_t j = 0; j < idx.size(); ++j)
      moved[static_cast<std::size_t>(perm[j])] = idx[j];
    r.add_term(moved, c);
  }
  return r;
}

Rational expectation(const PolyFunction& f, const MomentOracle& oracle) {
  if (f.n() != oracle.n()) throw std::invalid_argument("expectation: oracle arity mismatch");
  Rational sum(0);
  std::vector<unsigned> exps;
  for (const auto& [idx, c] : f.terms()) {
    exps.clear();
    for (auto e : idx)
      if (e > 0) exps.push_back(e);
    sum += c * oracle.moment(exps);
  }
  return sum;
}

Rational inner_product(const PolyFunction& f, const PolyFunction& g, const MomentOracle& oracle) {
  return expectation(f * g, oracle);
}

PolyFunction pair_average(const PolyFunction& f, int i, int j) {
  if (i == j) throw std::invalid_argument("pair_average: indices must differ");
  PolyFunction r(f.n());
  const auto su = static_cast<std::size_t>(i);
  const auto sv = static_cast<std::size_t>(j);
  for (const auto& [idx, c] : f.terms()) {
    const unsigned p = idx[su];
    const unsigned q = idx[sv];
    if (p + q == 0) {
      r.add_term(idx, c);
      continue;
    }
    // uniform repartition of s = eta_i + eta_j:
    // ∫ (1-alpha)^p alpha^q dalpha * s^(p+q) = p! q! / (p+q+1)! * s^(p+q)
    const Rational split(factorial(p) * factorial(q), factorial(p + q + 1));
    for (unsigned u = 0; u <= p + q; ++u) {
      MultiIndex idx2 = idx;
      idx2[su] = static_cast<std::uint8_t>(u);
      idx2[sv] = static_cast<std::uint8_t>(p + q - u);
      r.add_term(idx2, c * split * binomial(p + q, u));
    }
  }
  return r;
}

namespace {
// (R-1)! * prod e_j! / (R-1+|e|)! for R coordinates on a sub-simplex; the
// total^(|e|) factor is supplied by the caller as a polynomial.
Rational rest_moment_coeff(int r_coords, std::span<const unsigned> exps) {
  unsigned total = 0;
  int active = 0;
  BigInt prod = 1;
  for (unsigned e : exps) {
    if (e == 0) continue;
    ++active;
    total += e;
    prod *= factorial(e);
  }
  if (total == 0) return Rational(1);
  if (active > r_coords) throw std::invalid_argument("conditioning leaves too few coordinates");
  BigInt num = factorial(static_cast<unsigned>(r_coords - 1)) * prod;
  return Rational(num, factorial(static_cast<unsigned>(r_coords - 1) + total));
}
}  // namespace

Poly1 conditional_given_one(const PolyFunction& f, int k, const MomentOracle& oracle) {
  const int n = f.n();
  if (k < 0 || k >= n) throw std::invalid_argument("conditional_given_one: bad coordinate");
  const Rational total = Rational(n) * oracle.mean_energy();
  Poly1 out;
  std::vector<unsigned> exps;
  for (const auto& [idx, c] : f.terms()) {
    exps.clear();
    unsigned rest_deg = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (static_cast<int>(j) == k || idx[j] == 0) continue;
      exps.push_back(idx[j]);
      rest_deg += idx[j];
    }
    Rational coeff = c * rest_moment_coeff(n - 1, exps);
    // (total - eta_k)^rest_deg * eta_k^{idx[k]}
    Poly1 term = coeff * affine_power(total, Rational(-1), rest_deg);
    const unsigned ek = idx[static_cast<std::size_t>(k)];
    if (ek > 0) {
      std::vector<Rational> shift(ek, Rational(0));
      shift.push_back(Rational(1));
      term = term * Poly1(std::move(shift));
    }
    out = out + term;
  }
  return out;
}

PolyFunction conditional_pk(const PolyFunction& f, int k, const MomentOracle& oracle) {
  return PolyFunction::from_univariate(f.n(), k, conditional_given_one(f, k, oracle));
}

Poly1 conditional_given_pair_sum(const PolyFunction& f, int i, int j, const MomentOracle& oracle) {
  const int n = f.n();
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("conditional_given_pair_sum: bad pair");
  const Rational total = Rational(n) * oracle.mean_energy();
  Poly1 out;
  std::vector<unsigned> exps;
  for (const auto& [idx, c] : f.terms()) {
    const unsigned p = idx[static_cast<std::size_t>(i)];
    const unsigned q = idx[static_cast<std::size_t>(j)];
    exps.clear();
    unsigned rest_deg = 0;
    for (std::size_t l = 0; l < idx.size(); ++l) {
      if (static_cast<int>(l) == i || static_cast<int>(l) == j || idx[l] == 0) continue;
      exps.push_back(idx[l]);
      rest_deg += idx[l];
    }
    if (rest_deg > 0 && n < 3) throw std::invalid_argument("no rest coordinates available");
    // E[eta_i^p eta_j^q | s] = s^{p+q} p! q! / (p+q+1)!  (uniform split)
    Rational split(factorial(p) * factorial(q), factorial(p + q + 1));
    Rational coeff = c * split * rest_moment_coeff(n - 2, exps);
    Poly1 term = coeff * affine_power(total, Rational(-1), rest_deg);  // (total - s)^rest_deg
    if (p + q > 0) {
      std::vector<Rational> shift(p + q, Rational(0));
      shift.push_back(Rational(1));
      term = term * Poly1(std::move(shift));
    }
    out = out + term;
  }
  return out;
}

Poly1 correlation_K(const Poly1& phi, int n_particles) {
  const int n = n_particles;
  if (n < 3) throw std::invalid_argument("correlation_K: need N >= 3");
  Poly1 out;
  for (int d = 0; d <= phi.degree(); ++d) {
    const Rational& c = phi.c[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    Rational coeff =
        c * Rational(factorial(static_cast<unsigned>(d)) * factorial(static_cast<unsigned>(n - 2)),
                     factorial(static_cast<unsigned>(d + n - 2)));
    out = out + coeff * affine_power(Rational(n), Rational(-1), static_cast<unsigned>(d));
  }
  return out;
}

Rational correlation_eigenvalue(int n, int n_particles) {
  Rational mag(factorial(static_cast<unsigned>(n)) * factorial(static_cast<unsigned>(n_particles - 2)),
               factorial(static_cast<unsigned>(n + n_particles - 2)));
  return (n % 2 == 0) ? mag : -mag;
}

Rational marginal_moment_e(int n_particles, int k, const Rational& mean_energy) {
  return pow_rational(mean_energy, static_cast<unsigned>(k)) * MarginalLaw(n_particles).moment(k);
}

Rational nu_integral(const Poly1& p, int n_particles, const Rational& mean_energy) {
  Rational sum(0);
  for (int k = 0; k <= p.degree(); ++k) {
    if (p.c[static_cast<std::size_t>(k)] == 0) continue;
    sum += p.c[static_cast<std::size_t>(k)] * marginal_moment_e(n_particles, k, mean_energy);
  }
  return sum;
}

Rational nu_inner(const Poly1& a, const Poly1& b, int n_particles, const Rational& mean_energy) {
  return nu_integral(a * b, n_particles, mean_energy);
}

std::string PolyFunction::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  nlohmann::json t = nlohmann::json::object();
  for (const auto& [idx, c] : terms_) {
    std::ostringstream key;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k) key << ',';
      key << static_cast<int>(idx[k]);
    }
    t[key.str()] = rational_to_string(c);
  }
  j["terms"] = std::move(t);
  return j.dump();
}

PolyFunction PolyFunction::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  PolyFunction f(j.at("n").get<int>());
  for (const auto& [key, val] : j.at("terms").items()) {
    MultiIndex idx;
    std::istringstream in(key);
    std::string part;
    while (std::getline(in, part, ',')) idx.push_back(static_cast<std::uint8_t>(std::stoi(part)));
    if (static_cast<int>(idx.size()) != f.n())
      throw std::invalid_argument("PolyFunction::from_json: bad index length");
    f.add_term(idx, rational_from_string(val.get<std::string>()));
  }
  return f;
}

}  // namespace xchg
