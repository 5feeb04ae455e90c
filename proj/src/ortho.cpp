#include "xchg/ortho.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace xchg {

double OrthoPolyBasis::eval_normalized(int k, double eta) const {
  return monic[static_cast<std::size_t>(k)].eval(eta) /
         std::sqrt(to_double(sq_norm[static_cast<std::size_t>(k)]));
}

Rational OrthoPolyBasis::monic_coefficient(const Poly1& p, int k) const {
  return nu_inner(p, monic[static_cast<std::size_t>(k)], n_particles, mean_energy) /
         sq_norm[static_cast<std::size_t>(k)];
}

OrthoPolyBasis build_ortho_basis(int n_particles, int max_degree, const Rational& mean_energy) {
  if (max_degree < 1) throw std::invalid_argument("build_ortho_basis: max_degree >= 1 required");
  OrthoPolyBasis basis;
  basis.n_particles = n_particles;
  basis.mean_energy = mean_energy;
  for (int d = 0; d <= max_degree; ++d) {
    std::vector<Rational> mono(static_cast<std::size_t>(d) + 1, Rational(0));
    mono.back() = 1;
    Poly1 phi(std::move(mono));
    for (int k = 0; k < d; ++k) {
      Rational proj = nu_inner(phi, basis.monic[static_cast<std::size_t>(k)], n_particles,
                               mean_energy) /
                      basis.sq_norm[static_cast<std::size_t>(k)];
      phi = phi - proj * basis.monic[static_cast<std::size_t>(k)];
    }
    Rational norm2 = nu_inner(phi, phi, n_particles, mean_energy);
    if (norm2 <= 0) throw std::runtime_error("Gram-Schmidt produced a null vector");
    basis.monic.push_back(std::move(phi));
    basis.sq_norm.push_back(std::move(norm2));
  }
  return basis;
}

const OrthoPolyBasis& ortho_basis(int n_particles, int max_degree) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, OrthoPolyBasis> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(n_particles, max_degree);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, build_ortho_basis(n_particles, max_degree)).first;
  }
  return it->second;
}

KSpectrumReport verify_K_spectrum(int n_particles, int max_degree) {
  KSpectrumReport rep;
  rep.n_particles = n_particles;
  rep.max_degree = max_degree;
  const OrthoPolyBasis basis = build_ortho_basis(n_particles, max_degree);

  rep.exact_eigen_pass = true;
  for (int k = 0; k <= max_degree; ++k) {
    Rational kap = correlation_eigenvalue(k, n_particles);
    rep.kappa.push_back(kap);
    Poly1 lhs = correlation_K(basis.monic[static_cast<std::size_t>(k)], n_particles);
    Poly1 rhs = kap * basis.monic[static_cast<std::size_t>(k)];
    if (!(lhs == rhs)) {
      rep.exact_eigen_pass = false;
      std::ostringstream os;
      os << "eigen equation fails at degree " << k;
      rep.note = os.str();
    }
  }
  rep.monotone_pass = true;
  for (std::size_t k = 0; k + 1 < rep.kappa.size(); ++k) {
    if (abs(rep.kappa[k + 1]) > abs(rep.kappa[k])) rep.monotone_pass = false;
  }
  return rep;
}

}  // namespace xchg
