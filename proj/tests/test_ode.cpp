#include <doctest.h>

#include "pfk3/errors.hpp"
#include "pfk3/expr.hpp"
#include "pfk3/modular.hpp"
#include "pfk3/ode_calculus.hpp"
#include "pfk3/random.hpp"
#include "pfk3/verification.hpp"

using namespace pfk3;

namespace {

VarsPtr T() {
  static VarsPtr t = make_vars({"t"});
  return t;
}

RatFunc rf(const std::string& s) { return parse_ratfunc(s, T()); }
RatFunc d(const RatFunc& f) { return f.derivative("t"); }

// Direct transcription of the definitions, sharing no code with the library.
RatFunc schwarzian_oracle(const RatFunc& j) {
  RatFunc j1 = d(j), j2 = d(j1), j3 = d(j2);
  return (RatFunc(2) * j1 * j3 - RatFunc(3) * j2 * j2) / (RatFunc(2) * j1 * j1);
}

RatFunc box_oracle(const RatFunc& j) {
  RatFunc one(1);
  RatFunc q = (RatFunc(36) * j * j - RatFunc(41) * j + RatFunc(32)) / (RatFunc(144) * (j - one) * (j - one) * j * j);
  return d(j) * d(j) * q + schwarzian_oracle(j) / RatFunc(2);
}

LinearODE ode_of(const std::vector<RatFunc>& c) {
  LinearODE o;
  o.ring = T();
  o.var = "t";
  o.coefficients = c;
  return o;
}

}  // namespace

TEST_SUITE("ode") {
  TEST_CASE("Schwarzian examples") {
    CHECK(schwarzian(rf("t^2"), "t") == rf("-3/(2*t^2)"));
    CHECK(schwarzian(rf("(2*t + 3)/(5*t - 7)"), "t").is_zero());
    CHECK(schwarzian(rf("t^3 + t"), "t") == schwarzian_oracle(rf("t^3 + t")));
  }

  TEST_CASE("Schwarzian and Box agree with the definitions on random input") {
    RandomSource rs(41);
    for (int i = 0; i < 100; ++i) {
      RatFunc j = rs.nonconstant_ratfunc(T(), 2, 6);
      CHECK(schwarzian(j, "t") == schwarzian_oracle(j));
      CHECK(box(j, "t") == box_oracle(j));
    }
  }

  TEST_CASE("Schwarzian cocycle and Moebius kernel") {
    PropertyResult r = schwarzian_properties(42, 100);
    INFO(r.first_failure);
    CHECK(r.ok());
    RandomSource rs(43);
    for (int i = 0; i < 100; ++i) {
      RatFunc f = rs.nonconstant_ratfunc(T(), 2, 5), g = rs.nonconstant_ratfunc(T(), 2, 5);
      RatFunc lhs = schwarzian_oracle(compose(f, g));
      RatFunc rhs = compose(schwarzian_oracle(f), g) * d(g) * d(g) + schwarzian_oracle(g);
      CHECK(lhs == rhs);
    }
  }

  TEST_CASE("projective normal form is gauge invariant") {
    RandomSource rs(44);
    for (int i = 0; i < 100; ++i) {
      RatFunc a2 = rs.nonzero_ratfunc(T(), 2, 3), a1 = rs.ratfunc(T(), 2, 3), a0 = rs.ratfunc(T(), 2, 3);
      RatFunc l = rs.nonzero_ratfunc(T(), 2, 3), m = rs.nonzero_ratfunc(T(), 1, 2);
      // f = l g turns a2 f'' + a1 f' + a0 f into the operator below, then scaled by m.
      std::vector<RatFunc> conj{m * (a2 * d(d(l)) + a1 * d(l) + a0 * l), m * (RatFunc(2) * a2 * d(l) + a1 * l), m * a2 * l};
      CHECK(projective_normal_form(ode_of({a0, a1, a2})) == projective_normal_form(ode_of(conj)));
    }
  }

  TEST_CASE("tensor product on explicit solutions") {
    // f'' = 0 has 1, t; g'' - 2 g/t^2 = 0 has t^2, 1/t.
    LinearODE l = tensor_product_4(RatFunc(0), rf("-2/t^2"), T());
    CHECK(l.order() == 4);
    for (const char* s : {"t^2", "t^3", "1/t", "1"}) CHECK(l.apply(rf(s)).is_zero());
    CHECK_FALSE(l.apply(rf("t^4")).is_zero());
    CHECK_THROWS_AS(tensor_product_4(rf("t"), rf("t"), T()), ComputationError);
  }

  TEST_CASE("tensor product annihilates series products") {
    PropertyResult r = tensor_oracle(45, 100, 12);
    INFO(r.first_failure);
    CHECK(r.ok());
  }

  TEST_CASE("series solutions") {
    auto sol = second_order_solutions(RatFunc(1), Rational(0), 10);
    // cos t: 1, 0, -1/2, 0, 1/24
    CHECK(sol[0][2] == Rational(-1, 2));
    CHECK(sol[0][4] == Rational(1, 24));
    CHECK(sol[1][3] == Rational(-1, 6));
    PowerSeries e = PowerSeries::expand(rf("1/(1 - t)"), Rational(0), 6);
    for (size_t i = 0; i < 6; ++i) CHECK(e[i] == Rational(1));
  }

  TEST_CASE("Fano check") {
    CHECK(fano_check(rf("1/t"), rf("1/t")));
    CHECK_FALSE(fano_check(rf("1/t"), rf("1/t^2")));
    ModularParametrization m = catalog_parametrization(2);
    auto jp = symmetric_to_j_pair(m);
    REQUIRE(jp.roots.has_value());
    CHECK(fano_check(box(jp.roots->first, "t"), box(jp.roots->second, "t")));
  }

  TEST_CASE("Q-value transport") {
    VarsPtr h = make_vars({"h"});
    RatFunc q = parse_ratfunc("(h^2 - 48*h + 7560)/(4*(h^2 - 24*h - 2772)^2)", h);
    RatFunc expected = rf("(2848*t^4 - 800*t^3 + 108*t^2 + 4*t + 1)/(4*t^2*(120*t^3 - 68*t^2 + 2*t + 1)^2)");
    CHECK(qvalue_transport(rf("(-512*t^3 + 804*t^2 - 12*t + 1)/((1 - 6*t)^2*t)"), q, "t") == expected);
    CHECK(qvalue_transport(rf("(244*t^3 - 30*t^2 - 6*t + 1)/(t^2 - 6*t^3)"), q, "t") == expected);
    // Transport of the j Q-value along j itself is Box(j).
    RatFunc j = rf("(t^3 + 2)/(t - 1)");
    CHECK(qvalue_transport(j, j_qvalue(make_vars({"j"})), "t") == box_oracle(j));
  }
}
