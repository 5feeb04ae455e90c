#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "xchg/configuration.hpp"
#include "xchg/poly.hpp"

namespace xchg {

struct SpectralReport {
  double gamma = 0.0;
  int n_particles = 0;
  double mean_energy = 1.0;
  std::string method;  // galerkin-exact | galerkin-quadrature | autocorrelation | closed-form
  int degree = 0;
  int dof = 0;
  double value = 0.0;
  std::optional<double> lower;  // bracket, when available
  std::optional<double> upper;
  std::optional<std::string> exact_value;  // p/q when the whole computation stayed rational
  std::string notes;
};

enum class GapKind {
  kDelta,       // full exchange Dirichlet form
  kGamma,       // frozen-coordinate form with power weight
  kGammaTilde,  // frozen-coordinate form with quadratic minorant weight
};

// Variational restriction of a quadratic form to the mean-zero polynomials
// of total degree <= degree: trial basis of products of marginal-orthogonal
// polynomials over the first N-1 coordinates, recentred, with the exact
// Gram matrix. The smallest generalized eigenvalue is an upper bound on the
// spectral gap, non-increasing in degree.
struct GalerkinSystem {
  GapKind kind = GapKind::kDelta;
  double gamma = 0.0;
  int n_particles = 0;
  double mean_energy = 1.0;
  int degree = 0;
  bool exact = false;                  // all entries assembled as rationals
  std::vector<MultiIndex> index;       // per basis element, over N-1 slots
  Eigen::MatrixXd form;
  Eigen::MatrixXd gram;
  std::optional<Rational> exact_rayleigh;  // present when exact and dof == 1

  int dof() const { return static_cast<int>(index.size()); }
};

GalerkinSystem assemble_gap_system(GapKind kind, double gamma, int n_particles, int degree,
                                   double mean_energy = 1.0);

// Ascending generalized eigenvalues; throws on non-positive-definite Gram.
Eigen::VectorXd generalized_eigenvalues(const GalerkinSystem& system);

SpectralReport galerkin_gap(GapKind kind, const ModelParams& params, int degree);

// Convenience wrappers mirroring the per-form entry points.
SpectralReport galerkin_gap_delta(const ModelParams& params, int degree);
SpectralReport galerkin_gap_gamma(const ModelParams& params, int degree);
SpectralReport galerkin_gap_gamma_tilde(const ModelParams& params, int degree);

}  // namespace xchg
