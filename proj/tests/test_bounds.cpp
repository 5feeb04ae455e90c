#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "test_util.hpp"
#include "xchg/bounds.hpp"
#include "xchg/report.hpp"

using namespace xchg;

TEST_CASE("frozen-form lower bounds: stated values") {
  const BoundLedger g0 = gamma_lower_bounds(0.0, 4);
  CHECK(g0.find("gamma-lower")->value == doctest::Approx(0.625).epsilon(1e-14));
  CHECK(*g0.find("gamma-lower")->exact_value == "5/8");

  const BoundLedger g1 = gamma_lower_bounds(1.0, 5);
  CHECK(g1.find("gamma-lower")->value == doctest::Approx(0.65).epsilon(1e-14));

  // fractional gamma: the asserted product form plus the printed variant,
  // which is reported but flagged un-asserted
  const BoundLedger gm = gamma_lower_bounds(0.5, 5);
  const BoundEntry* prod = gm.find("gamma-lower");
  REQUIRE(prod != nullptr);
  CHECK(prod->asserted);
  CHECK(prod->value == doctest::Approx((1.0 - 0.5 / 4) * 0.65).epsilon(1e-12));
  const BoundEntry* printed = gm.find("gamma-lower-printed-variant");
  REQUIRE(printed != nullptr);
  CHECK_FALSE(printed->asserted);
  CHECK(printed->value == doctest::Approx(1.0 - 4.5 / 16.0).epsilon(1e-14));  // 0.71875

  CHECK_THROWS_AS(gamma_lower_bounds(0.5, 2), std::invalid_argument);
}

TEST_CASE("uniform-rate chain telescopes to the sharp value, exactly") {
  for (int n = 3; n <= 20; ++n) {
    const ChainResult r = delta_chain(0.0, n);
    const Rational sharp = Rational(2 * (n + 1), 3 * (n - 1));
    REQUIRE(r.exact_value.has_value());
    CHECK(*r.exact_value == rational_to_string(sharp));
  }
  CHECK(*delta_chain(0.0, 7).exact_value == "8/9");
  CHECK(*delta_chain(0.0, 20).exact_value == "14/19");  // (2/3)(21/19)
}

TEST_CASE("linear-rate chain: partial products and rigorous limit bracket") {
  const ChainResult r = delta_chain(1.0, 8);
  // 4 prod_{j=3}^{8} (1 - 3/(j-1)^2), frozen from the independent product
  CHECK(r.value == doctest::Approx(4.0 * 0.10254818594104309).epsilon(1e-12));
  REQUIRE(r.limit.has_value());
  // independent closed form: 4 prod_{k>=2} (1-3/k^2) = -2 sin(pi sqrt 3)/(pi sqrt 3)
  const double closed = 0.2741335284091663;
  CHECK(r.limit->lower <= closed);
  CHECK(closed <= r.limit->upper);
  CHECK(r.limit->upper - r.limit->lower < 1e-5);
  CHECK(r.limit->lower > 0.25);
  CHECK(r.limit->upper < 0.30);

  // partial products decrease and stay above the tail-corrected limit
  double prev = 4.0;
  for (const ChainEntry& e : r.steps) {
    CHECK(e.value <= prev + 1e-15);
    CHECK(e.value >= r.limit->lower);
    prev = e.value;
  }
}

TEST_CASE("fractional-gamma chain: weight-comparison telescoping") {
  const ChainResult r = delta_chain(0.5, 8);
  // (2/N)^(1-gamma) 2^(1+gamma) prod_{j=3}^{N} (1 - 3/(j-1)^2); the prefactor
  // at N=8 is (1/4)^(1/2) 2^(3/2) = sqrt(2)
  const double expect = std::sqrt(2.0) * 0.10254818594104309;
  CHECK(r.value == doctest::Approx(expect).epsilon(1e-10));
  REQUIRE(r.limit.has_value());
  CHECK(r.limit->lower == doctest::Approx(std::sqrt(2.0) * 0.068533382).epsilon(1e-4));
  CHECK(r.value >= r.limit->lower);
}

TEST_CASE("tail product bracket is rigorous and tight") {
  const ProductBracket b = tail_product_bracket(3, 1000000);
  CHECK(b.lower < b.upper);
  CHECK(b.upper - b.lower < 1e-5);
  const double closed = 0.2741335284091663 / 4.0;
  CHECK(b.lower <= closed);
  CHECK(closed <= b.upper);
  // fewer terms widen the bracket but keep enclosure
  const ProductBracket narrow = tail_product_bracket(3, 100);
  CHECK(narrow.lower <= closed);
  CHECK(closed <= narrow.upper);
}

TEST_CASE("minorant inequality: equalities and randomized grid") {
  for (double gm : {0.25, 0.5, 0.75}) {
    const MinorantReport rep = verify_minorant(gm, 4000, 17);
    CHECK(rep.pass);
    CHECK(rep.worst_margin >= -1e-12);
    CHECK(rep.inflection > -1.0);
    CHECK(rep.inflection < 0.0);
  }
  // boundary equalities: x = 0 and x = -1
  const double g = 0.5;
  CHECK(std::pow(1.0 + 0.0, g) - (1.0) == 0.0);
  CHECK(std::pow(1.0 + 1.0, g) >= 1.0 + g - (1.0 - g));  // sqrt(2) >= 1
  CHECK_THROWS_AS(verify_minorant(0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(verify_minorant(1.0, 10), std::invalid_argument);
}

TEST_CASE("averaged weight bounds: bracket and extreme points") {
  const WeightReport rep = verify_weight_bounds(0.5, 4, 50000, 18);
  CHECK(rep.pass);
  CHECK(rep.lower_bound == doctest::Approx(std::sqrt(0.75)).epsilon(1e-14));
  CHECK(rep.extreme_value == doctest::Approx(rep.lower_bound).epsilon(1e-14));
  const WeightReport rep2 = verify_weight_bounds(0.3, 6, 100000, 19);
  CHECK(rep2.pass);
}

TEST_CASE("summability gate: pass, fail, telescoping") {
  SummabilitySpec pass_spec;
  pass_spec.n0 = 4;
  pass_spec.tail_c = 1.0;
  pass_spec.tail_p = 1.5;
  const SummabilityResult pass_res = summability_gate(pass_spec);
  CHECK(pass_res.certified_positive);
  CHECK(pass_res.limit_lower > 0.0);

  SummabilitySpec fail_spec;
  fail_spec.n0 = 4;
  fail_spec.tail_c = 2.0;
  fail_spec.tail_p = 1.0;  // A_N = 2/N: not summable
  CHECK_FALSE(summability_gate(fail_spec).certified_positive);

  SummabilitySpec zero_spec;
  zero_spec.n0 = 3;
  zero_spec.head = {0.0, 0.0, 0.0, 0.0};
  const SummabilityResult zero_res = summability_gate(zero_spec);
  CHECK(zero_res.certified_positive);
  CHECK(zero_res.limit_lower == doctest::Approx(1.0).epsilon(1e-14));

  SummabilitySpec bad;
  bad.n0 = 4;
  bad.head = {0.9};  // above (N-1)/N
  CHECK_THROWS_AS(summability_gate(bad), std::domain_error);
}

TEST_CASE("ledger export carries the schema") {
  BoundLedger ledger = gamma_lower_bounds(0.5, 6);
  std::ostringstream os;
  write_ledger_csv(os, ledger, "probe");
  const std::string text = os.str();
  CHECK(text.find("name,gamma,N,value,anchor,notes") != std::string::npos);
  CHECK(text.find("gamma-lower") != std::string::npos);
}
