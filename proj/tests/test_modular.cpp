#include <doctest.h>

#include "pfk3/catalog.hpp"
#include "pfk3/errors.hpp"
#include "pfk3/expr.hpp"
#include "pfk3/families.hpp"
#include "pfk3/modular.hpp"
#include "pfk3/ode_calculus.hpp"
#include "pfk3/random.hpp"
#include "pfk3/verification.hpp"

using namespace pfk3;

TEST_SUITE("modular") {
  TEST_CASE("catalog checksum") {
    const Catalog& c = Catalog::instance();
    CHECK(c.stored_checksum() == "810dc3c09fbc4cd4");
    CHECK(c.computed_checksum() == c.stored_checksum());
    CHECK(c.records().size() == 85);
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
    std::string text(Catalog::embedded_text());
    size_t pos = text.find("1792857");
    REQUIRE(pos != std::string::npos);
    text[pos] = '2';
    CHECK_THROWS_AS(Catalog::parse(text), StructuralError);
  }

  TEST_CASE("Psi polynomials are weighted homogeneous") {
    CHECK(catalog_psi(2).weight == 18);
    CHECK(catalog_psi(3).weight == 24);
    PropertyResult r = psi_homogeneity(51, 1000);
    INFO(r.first_failure);
    CHECK(r.ok());
  }

  TEST_CASE("Psi vanishes on the level 2 and 3 parametrizations") {
    CHECK(psi_vanishing_check(2));
    CHECK(psi_vanishing_check(3));
    ModularParametrization m3 = catalog_parametrization(3);
    CHECK_FALSE(psi_vanishing_check(2, *m3.b_sq, *m3.d));
  }

  TEST_CASE("W dictionary") {
    PropertyResult r = w_dictionary(52, 1000);
    INFO(r.first_failure);
    CHECK(r.ok());
    VarsPtr t = make_vars({"t"});
    RandomSource rs(53);
    for (int i = 0; i < 100; ++i) {
      RatFunc j1 = rs.nonconstant_ratfunc(t, 2, 5), j2 = rs.nonconstant_ratfunc(t, 2, 5);
      RatFunc one(1);
      // With a = 1: W1 = 1/d = j1 j2 and W2 = b^2/d = (j1 - 1)(j2 - 1).
      WInvariants w = w_from_j_pair(j1, j2);
      CHECK(w.W1 == j1 * j2);
      CHECK(w.W2 == (j1 - one) * (j2 - one));
      ModularParametrization m = ModularParametrization::from_j_pair(j1, j2, t);
      CHECK(*m.b_sq == (j1 - one) * (j2 - one) / (j1 * j2));
      CHECK(*m.d == one / (j1 * j2));
      JPairResult back = symmetric_to_j_pair(ModularParametrization::from_symmetric(*m.b_sq, *m.d, t));
      CHECK(back.pi == j1 * j2);
      CHECK(back.sigma == j1 + j2);
      if (back.roots) CHECK(((back.roots->first == j1 && back.roots->second == j2) || (back.roots->first == j2 && back.roots->second == j1)));
    }
  }

  TEST_CASE("master equation holds on the catalog parametrizations") {
    for (int n : {2, 3, 6}) {
      CAPTURE(n);
      ModularParametrization m = catalog_parametrization(n);
      CHECK(master_equation_check(m));
      OrderDropReport od = order_drop_report(restrict_symmetric(*m.b_sq, *m.d, m.ring).ode);
      CHECK(od.order <= 3);
      CHECK(od.order_dropped);
    }
  }

  TEST_CASE("master equation fails on random pairs") {
    VarsPtr t = make_vars({"t"});
    RandomSource rs(54);
    for (int i = 0; i < 20; ++i) {
      RatFunc j1 = rs.nonconstant_ratfunc(t, 1, 5), j2 = rs.nonconstant_ratfunc(t, 2, 5);
      if (j1 == j2) continue;
      CHECK_FALSE(master_equation_check(ModularParametrization::from_j_pair(j1, j2, t)));
    }
    RatFunc j1 = parse_ratfunc("t", t), j2 = parse_ratfunc("t^2 + 1", t);
    CHECK(restrict_j_pair(j1, j2, t).ode.order() == 4);
  }

  TEST_CASE("master equation in a quadratic extension") {
    // b^2 and d chosen so that j1, j2 are conjugate over Q(t): pi = j1 j2 = t, sigma = j1 + j2 = 1 + t + t^2.
    VarsPtr t = make_vars({"t"});
    RatFunc pi = parse_ratfunc("t", t), sigma = parse_ratfunc("1 + t + t^2", t);
    ModularParametrization m = ModularParametrization::from_symmetric(RatFunc(1) - (sigma - RatFunc(1)) / pi, RatFunc(1) / pi, t);
    JPairResult jp = symmetric_to_j_pair(m);
    CHECK(jp.pi == pi);
    CHECK(jp.sigma == sigma);
    CHECK_FALSE(jp.rational);
    MasterEquationReport r = master_equation_report(m);
    CHECK(r.in_extension);
    CHECK_FALSE(r.holds);
  }

  TEST_CASE("level 2 example") {
    Level2Report r = level2_hauptmodul_example();
    CHECK(r.phi_vanishes);
    CHECK(r.transports_agree);
    CHECK(r.matches_record);
    Level2Report bad = level2_hauptmodul_example(parse_ratfunc("(244*t^3 - 30*t^2 - 6*t + 2)/(t^2 - 6*t^3)", make_vars({"t"})));
    CHECK_FALSE(bad.all());
  }
}
