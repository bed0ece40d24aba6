#include <doctest.h>

#include "pfk3/correspondences.hpp"

using namespace pfk3;

TEST_SUITE("correspondences") {
  TEST_CASE("isogenies divide the pulled-back cubic") {
    for (int n : {2, 3, 6}) {
      CAPTURE(n);
      IsogenyReport r = verify_isogeny(n);
      CHECK(r.holds);
      CHECK(r.base_matches);
      CHECK(r.homogeneous);
    }
    IsogenyReport c = verify_isogeny(3, true);
    CHECK(c.holds);
    CHECK(c.base_matches);
  }

  TEST_CASE("the degree-2 zeta3 term breaks homogeneity") {
    IsogenyReport r = verify_isogeny(3, false, true);
    CHECK_FALSE(r.homogeneous);
  }

  TEST_CASE("composition of base maps") {
    IsogenyMap six = compose(isogeny_map(3), isogeny_map(2));
    CHECK(six.level == 6);
    IsogenyReport r = verify_isogeny(6);
    CHECK(r.base_map == "[4*alpha - 2*beta : -alpha - 4*beta]");
  }

  TEST_CASE("Beauville map") {
    CHECK(verify_beauville_iso().holds);
    BeauvilleReport broken = verify_beauville_iso(true);
    CHECK_FALSE(broken.holds);
    CHECK_FALSE(broken.residual.empty());
  }

  TEST_CASE("toric curve") {
    ToricCurveReport r = toric_to_weierstrass();
    CHECK(r.equation_matches);
    CHECK(r.ode_matches);
    CHECK(r.factor_matches);
    CHECK(r.closed_form_factor == Rational(1, 393216));
  }

  TEST_CASE("toric K3") {
    ToricK3Report r = toric_to_inose();
    CHECK(r.holds());
    CHECK(r.inose_match);
    CHECK(r.a_cubed_map);
    CHECK_FALSE(r.perturbed_lambda3);
  }

  TEST_CASE("GKZ identities") {
    GkzReport g = gkz_agreement();
    CHECK(g.curve_identity);
    CHECK(g.identity1);
    CHECK(g.identity2_computed);
    REQUIRE(g.constant2.has_value());
    CHECK(*g.constant2 == RatFunc(-1728));
    CHECK_FALSE(g.mutation_1729);
  }
}
