#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "test_util.hpp"
#include "xchg/bounds.hpp"
#include "xchg/forms.hpp"
#include "xchg/galerkin.hpp"
#include "xchg/suites.hpp"

using namespace xchg;

namespace {
ModelParams make_params(double gamma, int n, double e = 1.0) {
  ModelParams p;
  p.gamma = gamma;
  p.n_particles = n;
  p.mean_energy = e;
  return p;
}
}  // namespace

TEST_CASE("two-particle gap is 2^(gamma+1) at degree one") {
  for (double gm : {0.0, 0.25, 0.5, 1.0}) {
    const SpectralReport rep = galerkin_gap_delta(make_params(gm, 2), 1);
    CHECK(rep.value == doctest::Approx(std::pow(2.0, gm + 1.0)).epsilon(1e-12));
    CHECK(rep.dof == 1);
  }
  // exact rationals at the endpoints
  CHECK(*galerkin_gap_delta(make_params(0.0, 2), 1).exact_value == "2");
  CHECK(*galerkin_gap_delta(make_params(1.0, 2), 1).exact_value == "4");
}

TEST_CASE("uniform-rate gap matches the sharp closed form") {
  for (int n = 3; n <= 8; ++n) {
    const double sharp = 2.0 / 3.0 * (n + 1.0) / (n - 1.0);
    const SpectralReport rep = galerkin_gap_delta(make_params(0.0, n), 3);
    CHECK(rep.value == doctest::Approx(sharp).epsilon(1e-10));
    CHECK(rep.method == "galerkin-exact");
  }
}

TEST_CASE("gap estimates do not increase with trial degree") {
  for (double gm : {0.0, 0.5, 1.0}) {
    for (int n : {3, 5}) {
      double prev = galerkin_gap_delta(make_params(gm, n), 1).value;
      for (int d = 2; d <= 4; ++d) {
        const double cur = galerkin_gap_delta(make_params(gm, n), d).value;
        CHECK(cur <= prev + 1e-11);
        prev = cur;
      }
    }
  }
}

TEST_CASE("frozen-coordinate gap: exact values at gamma = 0 and bounds elsewhere") {
  for (int n = 3; n <= 8; ++n) {
    const double exact = 1.0 - 1.0 / n - 2.0 / (static_cast<double>(n) * n);
    CHECK(galerkin_gap_gamma(make_params(0.0, n), 2).value ==
          doctest::Approx(exact).epsilon(1e-12));
    CHECK(galerkin_gap_gamma(make_params(0.0, n), 3).value ==
          doctest::Approx(exact).epsilon(1e-12));
  }
  // gamma = 1 estimates sit above the closed-form lower bound
  for (int n = 3; n <= 8; ++n) {
    const double lb = 1.0 - 1.0 / (n - 1.0) - 2.0 / (static_cast<double>(n) * (n - 1.0));
    CHECK(galerkin_gap_gamma(make_params(1.0, n), 3).value >= lb - 1e-12);
  }
}

TEST_CASE("minorant form: equality at gamma = 1, further drop below gamma gap") {
  for (int n : {4, 7}) {
    const double gt = galerkin_gap_gamma_tilde(make_params(1.0, n), 3).value;
    const double gw = galerkin_gap_gamma(make_params(1.0, n), 3).value;
    CHECK(gt == doctest::Approx(gw).epsilon(1e-12));
  }
  for (int n : {4, 7}) {
    // the minorant only lowers the form
    CHECK(galerkin_gap_gamma_tilde(make_params(0.0, n), 2).value <=
          galerkin_gap_gamma(make_params(0.0, n), 2).value + 1e-12);
    CHECK(galerkin_gap_gamma_tilde(make_params(0.5, n), 2).value <=
          galerkin_gap_gamma(make_params(0.5, n), 2).value + 1e-9);
  }
  // spot value: gamma = 0 minorant gap sits below the exact gamma gap at N=5
  CHECK(galerkin_gap_gamma_tilde(make_params(0.0, 5), 2).value <= 0.72 + 1e-12);
}

TEST_CASE("energy scaling acts as the exact power factor") {
  const SuiteResult r = suite_scaling_relation(0.5, 4, 3, 4.0, 1e-8);
  CHECK(r.pass);
  // gamma = 0 is insensitive to the energy scale
  const double v1 = galerkin_gap_delta(make_params(0.0, 4, 1.0), 2).value;
  const double v3 = galerkin_gap_delta(make_params(0.0, 4, 3.0), 2).value;
  CHECK(v1 == doctest::Approx(v3).epsilon(1e-10));
}

TEST_CASE("closed-form lower bounds bracket the Galerkin estimates") {
  for (double gm : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (int n = 3; n <= 10; ++n) {
      const double galerkin = galerkin_gap_gamma(make_params(gm, n), 3).value;
      for (const BoundEntry& e : gamma_lower_bounds(gm, n).entries) {
        if (!e.asserted) continue;
        CHECK(e.value <= galerkin + 1e-10);
      }
      // and the inductive chain sits below the exchange-gap estimate
      const double delta_galerkin = galerkin_gap_delta(make_params(gm, n), 3).value;
      CHECK(delta_chain(gm, n).value <= delta_galerkin + 1e-10);
    }
  }
}

TEST_CASE("gram matrices are positive definite and solver flags failures") {
  GalerkinSystem sys = assemble_gap_system(GapKind::kDelta, 0.5, 4, 2);
  CHECK_NOTHROW(generalized_eigenvalues(sys));
  sys.gram(0, 0) = -1.0;  // simulate a reduction bug
  CHECK_THROWS_AS(generalized_eigenvalues(sys), std::runtime_error);
  CHECK_THROWS_AS(assemble_gap_system(GapKind::kGamma, 0.5, 4, 2, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(assemble_gap_system(GapKind::kDelta, 0.5, 1, 2), std::invalid_argument);
}

TEST_CASE("minorant-form assembly stays exact for fractional gamma") {
  const GalerkinSystem sys = assemble_gap_system(GapKind::kGammaTilde, 0.5, 5, 2);
  CHECK(sys.exact);
  const GalerkinSystem sysq = assemble_gap_system(GapKind::kGamma, 0.5, 5, 2);
  CHECK_FALSE(sysq.exact);
}

namespace {

// Brute-force reference: raw recentred monomials over the first N-1
// coordinates, no pattern deduplication, entries straight from the bilinear
// evaluators. Same span, so the generalized eigenvalues must match.
double brute_force_gap(GapKind kind, double gamma, int n, int degree) {
  MomentOracle oracle(n);
  std::vector<PolyFunction> basis;
  std::vector<MultiIndex> idxs;
  MultiIndex cur(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> walk = [&](int pos, int used) {
    if (pos == n - 1) {
      if (used >= 1) idxs.push_back(cur);
      return;
    }
    for (int e = 0; e + used <= degree; ++e) {
      cur[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(e);
      walk(pos + 1, used + e);
    }
    cur[static_cast<std::size_t>(pos)] = 0;
  };
  walk(0, 0);
  for (const MultiIndex& a : idxs) {
    PolyFunction b = PolyFunction::monomial(n, a, Rational(1));
    basis.push_back(b - PolyFunction::constant(n, expectation(b, oracle)));
  }
  const int dim = static_cast<int>(basis.size());
  Eigen::MatrixXd form(dim, dim), gram(dim, dim);
  const Rational gamma_rat = rational_from_double(gamma);
  for (int a = 0; a < dim; ++a) {
    for (int b = a; b < dim; ++b) {
      gram(a, b) = gram(b, a) = to_double(
          inner_product(basis[static_cast<std::size_t>(a)], basis[static_cast<std::size_t>(b)],
                        oracle));
      double v = 0.0;
      switch (kind) {
        case GapKind::kDelta:
          v = dirichlet_form(basis[static_cast<std::size_t>(a)],
                             basis[static_cast<std::size_t>(b)], gamma, oracle);
          break;
        case GapKind::kGamma:
          v = form_G(basis[static_cast<std::size_t>(a)], basis[static_cast<std::size_t>(b)],
                     gamma, oracle);
          break;
        case GapKind::kGammaTilde:
          v = to_double(form_G_tilde(basis[static_cast<std::size_t>(a)],
                                     basis[static_cast<std::size_t>(b)], gamma_rat, oracle));
          break;
      }
      form(a, b) = form(b, a) = v;
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(form, gram);
  return solver.eigenvalues()(0);
}

}  // namespace

TEST_CASE("pattern-cached assembly agrees with a brute-force monomial basis") {
  struct Probe {
    GapKind kind;
    double gamma;
    int n;
    int degree;
  };
  for (const Probe& p : {Probe{GapKind::kDelta, 0.5, 4, 2}, Probe{GapKind::kDelta, 1.0, 4, 2},
                         Probe{GapKind::kGamma, 0.5, 5, 2},
                         Probe{GapKind::kGammaTilde, 0.25, 5, 2}}) {
    GalerkinSystem sys = assemble_gap_system(p.kind, p.gamma, p.n, p.degree);
    const double fast = generalized_eigenvalues(sys)(0);
    const double slow = brute_force_gap(p.kind, p.gamma, p.n, p.degree);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-9));
  }
}
