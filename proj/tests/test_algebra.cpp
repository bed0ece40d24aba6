#include <doctest.h>

#include "pfk3/expr.hpp"
#include "pfk3/random.hpp"
#include "pfk3/verification.hpp"

using namespace pfk3;

namespace {

RatFunc rf(const std::string& s, const VarsPtr& v) { return parse_ratfunc(s, v); }

// Quotient rule computed on an arbitrary (unreduced) representative.
RatFunc naive_derivative(const Poly& n, const Poly& d, int var) {
  return RatFunc(n.derivative(var) * d - n * d.derivative(var), d * d);
}

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("ring axioms on 1000 random triples") {
    PropertyResult r = ring_axioms(7, 1000);
    INFO(r.first_failure);
    CHECK(r.cases == 4000);
    CHECK(r.ok());
  }

  TEST_CASE("rational arithmetic") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    Rational r(6, -4);
    r.canonicalize();
    CHECK(r == Rational(-3, 2));
  }

  TEST_CASE("zeta3 norm is rational and multiplicative") {
    RandomSource rs(11);
    for (int i = 0; i < 1000; ++i) {
      Cyclo3 a = rs.cyclo(), b = rs.cyclo();
      Cyclo3 n = a * a.conj();
      REQUIRE(n.is_rational());
      CHECK(n.u() == a.u() * a.u() - a.u() * a.v() + a.v() * a.v());
      CHECK((a * b).norm() == a.norm() * b.norm());
    }
    CHECK(Cyclo3::zeta() * Cyclo3::zeta() + Cyclo3::zeta() + Cyclo3(1) == Cyclo3());
  }

  TEST_CASE("canonical form of fractions") {
    VarsPtr v = make_vars({"x", "y"});
    RandomSource rs(12);
    for (int i = 0; i < 1000; ++i) {
      Poly a = rs.poly(v, 2, 3), b = rs.nonzero_poly(v, 2, 3), c = rs.nonzero_poly(v, 2, 3);
      RatFunc f(a, b), g(a * c, b * c);
      CHECK(f == g);
      CHECK(f.num().to_string() == g.num().to_string());
      CHECK(f.den().to_string() == g.den().to_string());
      // Cross multiplication agrees with normal-form equality.
      RatFunc h(rs.poly(v, 2, 3), rs.nonzero_poly(v, 2, 3));
      bool cross = (f.num() * h.den() - h.num() * f.den()).is_zero();
      CHECK(cross == (f == h));
    }
    RatFunc f = rf("(2*x^2 - 2)/(4*x + 4)", v);
    CHECK(f.num().to_string() == "1/2*x - 1/2");
    CHECK(f.den().to_string() == "1");
  }

  TEST_CASE("Leibniz rule and derivative of unreduced representatives") {
    VarsPtr v = make_vars({"x", "y"});
    RandomSource rs(13);
    for (int i = 0; i < 1000; ++i) {
      RatFunc p = rs.ratfunc(v, 2, 3), q = rs.ratfunc(v, 2, 3);
      CHECK((p * q).derivative(0) == p * q.derivative(0) + q * p.derivative(0));
      Poly n = rs.poly(v, 2, 3), d = rs.nonzero_poly(v, 2, 2), c = rs.nonzero_poly(v, 1, 2);
      CHECK(RatFunc(n * c, d * c).derivative(1) == naive_derivative(n * c, d * c, 1));
      CHECK(RatFunc(n, d).derivative(1) == naive_derivative(n * c, d * c, 1));
    }
  }

  TEST_CASE("derivative examples") {
    VarsPtr t = make_vars({"t"});
    CHECK(rf("1/t", t).derivative("t") == rf("-1/t^2", t));
    CHECK(rf("(864*t - 1)/13824", t).derivative("t") == RatFunc(Rational(1, 16)));
    CHECK(RatFunc(Rational(5, 7)).embed(t).derivative("t").is_zero());
  }

  TEST_CASE("polynomial division") {
    VarsPtr v = make_vars({"x", "y", "z"});
    RandomSource rs(14);
    for (int i = 0; i < 200; ++i) {
      Poly a = rs.poly(v, 3, 4), b = rs.nonzero_poly(v, 2, 3);
      CHECK((a * b).exact_div(b) == a);
    }
  }

  TEST_CASE("univariate square roots") {
    VarsPtr t = make_vars({"t"});
    RatFunc f = rf("(t^2 + 3*t - 1)/(t - 5)", t);
    auto r = ratfunc_sqrt(f * f);
    REQUIRE(r.has_value());
    CHECK((*r == f || *r == -f));
    CHECK_FALSE(ratfunc_sqrt(rf("t^2 + 1", t)).has_value());
  }
}
