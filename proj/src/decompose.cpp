#include "xchg/decompose.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xchg {

std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> a,
                                     std::vector<Rational> b) {
  const std::size_t rows = a.size();
  if (rows == 0 || b.size() != rows) throw std::invalid_argument("solve_rational: bad system");
  const std::size_t cols = a.front().size();

  std::vector<std::size_t> pivot_col_of_row;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[row]);
    std::swap(b[pivot], b[row]);
    const Rational inv = Rational(1) / a[row][col];
    for (std::size_t j = col; j < cols; ++j) a[row][j] *= inv;
    b[row] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational factor = a[r][col];
      for (std::size_t j = col; j < cols; ++j) a[r][j] -= factor * a[row][j];
      b[r] -= factor * b[row];
    }
    pivot_col_of_row.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r) {
    if (b[r] != 0) throw std::runtime_error("solve_rational: inconsistent system");
  }
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r) x[pivot_col_of_row[r]] = b[r];
  return x;
}

namespace {

// Projection of f onto the span of { phi_n(eta_k) : 1 <= n <= deg f }.
// Returns per-coordinate coefficient rows along the monic family.
struct AnProjection {
  std::vector<std::vector<Rational>> coeff;  // coeff[k][n-1] along monic[n]
  PolyFunction p;                            // the projection as a polynomial
};

AnProjection project_onto_single_coordinate_span(const PolyFunction& f,
                                                 const MomentOracle& oracle) {
  const int n = f.n();
  const int deg = std::max(1, f.total_degree());
  if (deg > 24) throw std::overflow_error("degree cap exceeded in projection");
  const OrthoPolyBasis& basis = ortho_basis(n, deg);

  // Gram of { phi_n(eta_k) } is block diagonal in n with N x N blocks
  // sq_norm_n [ (1 - kappa_n) I + kappa_n J ]; the right-hand side comes from
  // the one-coordinate conditionals of f. The n = 1 block is singular
  // (sum_k phi_1(eta_k) vanishes on the simplex), handled by the exact
  // solver; the shift to the canonical representative is applied afterward.
  std::vector<Poly1> pk(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) pk[static_cast<std::size_t>(k)] = conditional_given_one(f, k, oracle);

  AnProjection out;
  out.coeff.assign(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(deg), Rational(0)));
  out.p = PolyFunction(n);

  for (int m = 1; m <= deg; ++m) {
    const Rational kap = correlation_eigenvalue(m, n);
    const Rational& norm2 = basis.sq_norm[static_cast<std::size_t>(m)];
    std::vector<std::vector<Rational>> gram(static_cast<std::size_t>(n),
                                            std::vector<Rational>(static_cast<std::size_t>(n)));
    std::vector<Rational> rhs(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        gram[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] =
            (k == l) ? norm2 : kap * norm2;
      }
      rhs[static_cast<std::size_t>(k)] =
          nu_inner(pk[static_cast<std::size_t>(k)], basis.monic[static_cast<std::size_t>(m)], n);
    }
    std::vector<Rational> x = solve_rational(std::move(gram), std::move(rhs));
    for (int k = 0; k < n; ++k) {
      out.coeff[static_cast<std::size_t>(k)][static_cast<std::size_t>(m - 1)] = x[static_cast<std::size_t>(k)];
    }
  }

  for (int k = 0; k < n; ++k) {
    Poly1 rho_k;
    for (int m = 1; m <= deg; ++m) {
      const Rational& c = out.coeff[static_cast<std::size_t>(k)][static_cast<std::size_t>(m - 1)];
      if (c == 0) continue;
      rho_k = rho_k + c * basis.monic[static_cast<std::size_t>(m)];
    }
    out.p = out.p + PolyFunction::from_univariate(n, k, rho_k);
  }
  return out;
}

void canonical_shift(std::vector<std::vector<Rational>>& coeff) {
  Rational mean(0);
  for (const auto& row : coeff) mean += row[0];
  mean /= static_cast<int>(coeff.size());
  for (auto& row : coeff) row[0] -= mean;
}

}  // namespace

CanonicalRep canonical_representation(const PolyFunction& f, const MomentOracle& oracle) {
  const int n = f.n();
  const Rational total = Rational(n) * oracle.mean_energy();
  if (expectation(f, oracle) != 0)
    throw std::invalid_argument("canonical_representation: f must have mean zero");
  AnProjection proj = project_onto_single_coordinate_span(f, oracle);
  if (!(f - proj.p).reduced(total).is_zero()) {
    throw std::invalid_argument(
        "canonical_representation: f is not a sum of single-coordinate functions");
  }
  canonical_shift(proj.coeff);
  const OrthoPolyBasis& basis = ortho_basis(n, std::max(1, f.total_degree()));
  CanonicalRep rep;
  rep.rho.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Poly1 rho_k;
    for (std::size_t m = 0; m < proj.coeff[static_cast<std::size_t>(k)].size(); ++m) {
      const Rational& c = proj.coeff[static_cast<std::size_t>(k)][m];
      if (c == 0) continue;
      rho_k = rho_k + c * basis.monic[m + 1];
    }
    rep.rho[static_cast<std::size_t>(k)] = std::move(rho_k);
  }
  return rep;
}

Decomposition trial_decomposition(const PolyFunction& f, const MomentOracle& oracle) {
  const int n = f.n();
  if (expectation(f, oracle) != 0)
    throw std::invalid_argument("trial_decomposition: f must be orthogonal to constants");
  AnProjection proj = project_onto_single_coordinate_span(f, oracle);
  canonical_shift(proj.coeff);

  const int deg = std::max(1, f.total_degree());
  const OrthoPolyBasis& basis = ortho_basis(n, deg);

  Decomposition d;
  d.s = PolyFunction(n);
  d.g = PolyFunction(n);
  d.rho.resize(static_cast<std::size_t>(n));
  d.alpha_monic.resize(static_cast<std::size_t>(n));
  d.alphas.resize(static_cast<std::size_t>(n));
  PolyFunction p(n);
  const double phi1_norm = std::sqrt(to_double(basis.sq_norm[1]));
  for (int k = 0; k < n; ++k) {
    Poly1 rho_k;
    for (int m = 1; m <= deg; ++m) {
      const Rational& c = proj.coeff[static_cast<std::size_t>(k)][static_cast<std::size_t>(m - 1)];
      if (c == 0) continue;
      rho_k = rho_k + c * basis.monic[static_cast<std::size_t>(m)];
    }
    const Rational& a1 = proj.coeff[static_cast<std::size_t>(k)][0];
    d.alpha_monic[static_cast<std::size_t>(k)] = a1;
    d.alphas[static_cast<std::size_t>(k)] = to_double(a1) * phi1_norm;
    d.s = d.s + PolyFunction::from_univariate(n, k, a1 * basis.monic[1]);
    p = p + PolyFunction::from_univariate(n, k, rho_k);
    d.rho[static_cast<std::size_t>(k)] = std::move(rho_k);
  }
  d.g = p - d.s;
  d.h = f - p;
  return d;
}

ChaosSandwichReport verify_chaos_sandwich(const PolyFunction& f, const MomentOracle& oracle) {
  CanonicalRep rep = canonical_representation(f, oracle);
  const int n = f.n();
  Rational sum_norms(0);
  for (const auto& rho : rep.rho) sum_norms += nu_inner(rho, rho, n);
  ChaosSandwichReport r;
  r.middle = inner_product(f, f, oracle);
  r.lower = (Rational(1) - Rational(2, n)) * sum_norms;
  r.upper = (Rational(1) + Rational(2, n)) * sum_norms;
  r.pass = (r.lower <= r.middle) && (r.middle <= r.upper);
  return r;
}

double p0_second_eigenvalue(int n_particles, int max_degree, std::vector<double>* spectrum) {
  if (n_particles < 3) throw std::invalid_argument("p0_second_eigenvalue: need N >= 3");
  if (max_degree < 1) throw std::invalid_argument("p0_second_eigenvalue: need degree >= 1");
  const int n = n_particles;
  const OrthoPolyBasis& basis = ortho_basis(n, max_degree);

  // Basis phi_m(eta_k); the k = N-1 copy of phi_1 is dropped because
  // sum_k phi_1(eta_k) = 0 on the simplex.
  struct Item {
    int k;
    int m;
  };
  std::vector<Item> items;
  for (int m = 1; m <= max_degree; ++m) {
    const int kmax = (m == 1) ? n - 1 : n;
    for (int k = 0; k < kmax; ++k) items.push_back({k, m});
  }
  const int dim = static_cast<int>(items.size());
  Eigen::MatrixXd gram(dim, dim), op(dim, dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const auto [k, mm] = items[static_cast<std::size_t>(a)];
      const auto [l, m2] = items[static_cast<std::size_t>(b)];
      if (mm != m2) {
        gram(a, b) = 0.0;
        op(a, b) = 0.0;
        continue;
      }
      const double norm2 = to_double(basis.sq_norm[static_cast<std::size_t>(mm)]);
      const double kap = to_double(correlation_eigenvalue(mm, n));
      const double g = (k == l) ? norm2 : kap * norm2;
      gram(a, b) = g;
      // <phi_m(eta_k), P0 phi_m(eta_l)>; P0 phi_m(eta_l) =
      //   (1/N)[phi_m(eta_l) + kappa_m sum_{r != l} phi_m(eta_r)]
      double sum_rest;  // sum_{r != l} <phi_m(eta_k), phi_m(eta_r)> / norm2
      if (k == l) {
        sum_rest = (n - 1) * kap;
      } else {
        sum_rest = 1.0 + (n - 2) * kap;
      }
      op(a, b) = norm2 / n * (((k == l) ? 1.0 : kap) + kap * sum_rest);
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(op, gram);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigen solver failed");
  if (spectrum) {
    spectrum->assign(solver.eigenvalues().data(), solver.eigenvalues().data() + dim);
  }
  return solver.eigenvalues()(dim - 1);
}

}  // namespace xchg
