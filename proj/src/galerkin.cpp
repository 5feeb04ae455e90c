#include "xchg/galerkin.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "xchg/forms.hpp"
#include "xchg/ortho.hpp"

namespace xchg {

namespace {

void enumerate_indices(int slots, int degree, MultiIndex& cur, int pos, int used,
                       std::vector<MultiIndex>& out) {
  if (pos == slots) {
    if (used >= 1) out.push_back(cur);
    return;
  }
  for (int e = 0; e + used <= degree; ++e) {
    cur[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(e);
    enumerate_indices(slots, degree, cur, pos + 1, used + e, out);
  }
  cur[static_cast<std::size_t>(pos)] = 0;
}

// Matrix entries depend on the pair of multi-indices only through the
// multiset of per-slot exponent pairs: the measure and both forms are
// symmetric under coordinate permutations. Canonicalizing the key collapses
// the assembly to a few hundred distinct computations per system.
using PatternKey = std::vector<std::pair<std::uint8_t, std::uint8_t>>;

PatternKey make_key(const MultiIndex& a, const MultiIndex& b) {
  PatternKey fwd, rev;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0 && b[k] == 0) continue;
    fwd.emplace_back(a[k], b[k]);
    rev.emplace_back(b[k], a[k]);
  }
  std::sort(fwd.begin(), fwd.end());
  std::sort(rev.begin(), rev.end());
  return std::min(fwd, rev);
}

}  // namespace

GalerkinSystem assemble_gap_system(GapKind kind, double gamma, int n_particles, int degree,
                                   double mean_energy) {
  if (n_particles < 2) throw std::invalid_argument("assemble_gap_system: need N >= 2");
  if (degree < 1) throw std::invalid_argument("assemble_gap_system: need degree >= 1");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("assemble_gap_system: gamma outside [0,1]");
  if (kind != GapKind::kDelta && mean_energy != 1.0)
    throw std::invalid_argument("frozen-coordinate forms are defined at mean energy 1");
  if (kind != GapKind::kDelta && n_particles < 3)
    throw std::invalid_argument("frozen-coordinate forms need N >= 3");

  const int n = n_particles;
  const Rational energy = rational_from_double(mean_energy);
  const MomentOracle oracle(n, energy);
  const OrthoPolyBasis basis1d = build_ortho_basis(n, degree, energy);

  GalerkinSystem sys;
  sys.kind = kind;
  sys.gamma = gamma;
  sys.n_particles = n;
  sys.mean_energy = mean_energy;
  sys.degree = degree;
  sys.exact = (kind == GapKind::kGammaTilde) || gamma == 0.0 || gamma == 1.0;

  MultiIndex cur(static_cast<std::size_t>(n - 1), 0);
  enumerate_indices(n - 1, degree, cur, 0, 0, sys.index);
  const int dim = sys.dof();

  // Recentred product basis as N-variable polynomials.
  std::vector<PolyFunction> funcs;
  funcs.reserve(static_cast<std::size_t>(dim));
  for (const MultiIndex& a : sys.index) {
    PolyFunction b = PolyFunction::constant(n, Rational(1));
    for (int k = 0; k < n - 1; ++k) {
      const int e = a[static_cast<std::size_t>(k)];
      if (e == 0) continue;
      b = b * PolyFunction::from_univariate(n, k, basis1d.monic[static_cast<std::size_t>(e)]);
    }
    b = b - PolyFunction::constant(n, expectation(b, oracle));
    funcs.push_back(std::move(b));
  }

  const Rational gamma_rat = rational_from_double(gamma);
  auto form_entry_exact = [&](const PolyFunction& u, const PolyFunction& v) -> Rational {
    switch (kind) {
      case GapKind::kDelta:
        return dirichlet_form_exact(u, v, static_cast<int>(gamma), oracle);
      case GapKind::kGamma:
        return form_G_exact(u, v, static_cast<int>(gamma), oracle);
      case GapKind::kGammaTilde:
        return form_G_tilde(u, v, gamma_rat, oracle);
    }
    throw std::logic_error("unknown gap kind");
  };
  auto form_entry_double = [&](const PolyFunction& u, const PolyFunction& v) -> double {
    switch (kind) {
      case GapKind::kDelta:
        return dirichlet_form(u, v, gamma, oracle);
      case GapKind::kGamma:
        return form_G(u, v, gamma, oracle);
      case GapKind::kGammaTilde:
        return to_double(form_G_tilde(u, v, gamma_rat, oracle));
    }
    throw std::logic_error("unknown gap kind");
  };

  sys.form.resize(dim, dim);
  sys.gram.resize(dim, dim);
  std::map<PatternKey, Rational> gram_cache;
  std::map<PatternKey, Rational> form_cache_exact;
  std::map<PatternKey, double> form_cache_double;
  Rational form00, gram00;

  for (int a = 0; a < dim; ++a) {
    for (int b = a; b < dim; ++b) {
      const PatternKey key = make_key(sys.index[static_cast<std::size_t>(a)],
                                      sys.index[static_cast<std::size_t>(b)]);
      auto git = gram_cache.find(key);
      if (git == gram_cache.end()) {
        git = gram_cache
                  .emplace(key, inner_product(funcs[static_cast<std::size_t>(a)],
                                              funcs[static_cast<std::size_t>(b)], oracle))
                  .first;
      }
      sys.gram(a, b) = sys.gram(b, a) = to_double(git->second);

      double fval;
      if (sys.exact) {
        auto fit = form_cache_exact.find(key);
        if (fit == form_cache_exact.end()) {
          fit = form_cache_exact
                    .emplace(key, form_entry_exact(funcs[static_cast<std::size_t>(a)],
                                                   funcs[static_cast<std::size_t>(b)]))
                    .first;
        }
        fval = to_double(fit->second);
        if (a == 0 && b == 0) {
          form00 = fit->second;
          gram00 = git->second;
        }
      } else {
        auto fit = form_cache_double.find(key);
        if (fit == form_cache_double.end()) {
          fit = form_cache_double
                    .emplace(key, form_entry_double(funcs[static_cast<std::size_t>(a)],
                                                    funcs[static_cast<std::size_t>(b)]))
                    .first;
        }
        fval = fit->second;
      }
      sys.form(a, b) = sys.form(b, a) = fval;
    }
  }
  if (sys.exact && dim == 1 && gram00 != 0) sys.exact_rayleigh = form00 / gram00;
  return sys;
}

Eigen::VectorXd generalized_eigenvalues(const GalerkinSystem& system) {
  Eigen::LLT<Eigen::MatrixXd> llt(system.gram);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("Gram matrix is not positive definite (reduction bug)");
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(system.form, system.gram);
  if (solver.info() != Eigen::Success) throw std::runtime_error("generalized eigensolver failed");
  return solver.eigenvalues();
}

SpectralReport galerkin_gap(GapKind kind, const ModelParams& params, int degree) {
  params.validate();
  GalerkinSystem sys =
      assemble_gap_system(kind, params.gamma, params.n_particles, degree, params.mean_energy);
  Eigen::VectorXd evs = generalized_eigenvalues(sys);
  SpectralReport rep;
  rep.gamma = params.gamma;
  rep.n_particles = params.n_particles;
  rep.mean_energy = params.mean_energy;
  rep.method = sys.exact ? "galerkin-exact" : "galerkin-quadrature";
  rep.degree = degree;
  rep.dof = sys.dof();
  rep.value = evs(0);
  rep.upper = evs(0);  // variational estimate bounds the gap from above
  if (sys.exact_rayleigh) rep.exact_value = rational_to_string(*sys.exact_rayleigh);
  rep.notes = "variational upper bound, non-increasing in trial degree";
  return rep;
}

SpectralReport galerkin_gap_delta(const ModelParams& params, int degree) {
  return galerkin_gap(GapKind::kDelta, params, degree);
}
SpectralReport galerkin_gap_gamma(const ModelParams& params, int degree) {
  return galerkin_gap(GapKind::kGamma, params, degree);
}
SpectralReport galerkin_gap_gamma_tilde(const ModelParams& params, int degree) {
  return galerkin_gap(GapKind::kGammaTilde, params, degree);
}

}  // namespace xchg
