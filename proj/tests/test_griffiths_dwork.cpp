#include <doctest.h>

#include "pfk3/catalog.hpp"
#include "pfk3/correspondences.hpp"
#include "pfk3/expr.hpp"
#include "pfk3/families.hpp"
#include "pfk3/griffiths_dwork.hpp"
#include "pfk3/groebner.hpp"
#include "pfk3/ode_calculus.hpp"
#include "pfk3/holonomic.hpp"
#include "pfk3/random.hpp"

using namespace pfk3;

namespace {

LinearODE ode_of(const std::vector<RatFunc>& c, const VarsPtr& t) {
  LinearODE o;
  o.ring = t;
  o.var = t->name(0);
  o.coefficients = c;
  return o;
}

GeoPoly geo(const std::string& s, const VarsPtr& coords, const VarsPtr& params) {
  std::vector<std::string> all = coords->names();
  for (const auto& n : params->names()) all.push_back(n);
  return geometric_polynomial(parse_ratfunc(s, make_vars(all)), coords, params);
}

}  // namespace

TEST_SUITE("griffiths_dwork") {
  TEST_CASE("Legendre family gives the classical hypergeometric equation") {
    // y^2 = x(x-1)(x-t) moved to Weierstrass form by a t-dependent translation only.
    VarsPtr t = make_vars({"t"});
    RatFunc g2 = parse_ratfunc("4*(t^2 - t + 1)/3", t);
    RatFunc g3 = parse_ratfunc("4*(t + 1)*(2*t - 1)*(t - 2)/27", t);
    LinearODE gd = picard_fuchs_ode(weierstrass_family(g2, g3, t), 2);
    LinearODE legendre = ode_of({RatFunc(Rational(-1, 4)), parse_ratfunc("1 - 2*t", t), parse_ratfunc("t*(1 - t)", t)}, t);
    CHECK(gd.order() == 2);
    CHECK(same_up_to_factor(gd, legendre));
  }

  TEST_CASE("Hesse pencil") {
    VarsPtr xyz = make_vars({"x", "y", "z"});
    VarsPtr s = make_vars({"s"});
    Hypersurface h(geo("x^3 + y^3 + z^3 - 3*s*x*y*z", xyz, s), s);
    LinearODE gd = picard_fuchs_ode(h, 2);
    CHECK(same_up_to_factor(gd, ode_of({parse_ratfunc("s", s), parse_ratfunc("3*s^2", s), parse_ratfunc("s^3 - 1", s)}, s)));
  }

  TEST_CASE("Weierstrass membership modulo the Jacobian ideal") {
    VarsPtr xyz = make_vars({"x", "y", "z"});
    VarsPtr g = make_vars({"g2", "g3"});
    Hypersurface h = weierstrass_family(RatFunc::variable(g, "g2"), RatFunc::variable(g, "g3"), g);
    // z dQ/dz - (y/2) dQ/dy = 2 g2 x z^2 + 3 g3 z^3.
    GeoPoly p = geo("x*z^2 + 3*g3/(2*g2)*z^3", xyz, g);
    auto cert = membership_certificate(p, h.jacobian());
    REQUIRE(cert.has_value());
    GeoPoly sum(xyz);
    for (size_t i = 0; i < cert->size(); ++i) sum += (*cert)[i] * h.gradient()[i];
    CHECK(sum == p);
    CHECK_FALSE(membership_certificate(geo("x*z^2", xyz, g), h.jacobian()).has_value());
  }

  TEST_CASE("partial relation in (g2, g3)") {
    VarsPtr g = make_vars({"g2", "g3"});
    Hypersurface h = weierstrass_family(RatFunc::variable(g, "g2"), RatFunc::variable(g, "g3"), g);
    PicardFuchsSystem sys = picard_fuchs_system(h, 1);
    REQUIRE(sys.equations.size() == 1);
    DiffOperator euler = parse_operator("4*g2*Dg2 + 6*g3*Dg3 + 1", g);
    // The period scales with weight -1 under (g2, g3) -> (l^4 g2, l^6 g3), so the single relation is the Euler operator.
    CHECK(proportionality(sys.equations[0], euler).has_value());
    DerivativeTable table = derivative_table(h, 1);
    CHECK(annihilates_period(table, euler));
    CHECK_FALSE(annihilates_period(table, parse_operator("4*g2*Dg2 + 6*g3*Dg3 - 1", g)));
  }

  TEST_CASE("projective normal form of random Weierstrass families equals Box(j)") {
    VarsPtr t = make_vars({"t"});
    RandomSource rs(31);
    int done = 0;
    while (done < 20) {
      RatFunc g2 = rs.poly(t, 2, 3, 5), g3 = rs.poly(t, 2, 3, 5);
      RatFunc delta = g2 * g2 * g2 - RatFunc(27) * g3 * g3;
      if (g2.is_zero() || g3.is_zero() || delta.is_zero()) continue;
      RatFunc j = g2 * g2 * g2 / delta;
      if (j.is_constant()) continue;
      ++done;
      LinearODE gd = picard_fuchs_ode(weierstrass_family(g2, g3, t), 2);
      REQUIRE(gd.order() == 2);
      CHECK(projective_normal_form(gd) == box(j, "t"));
      CHECK(same_up_to_factor(gd, ode_of(weierstrass_closed_form(g2, g3, "t"), t)));
    }
  }

  TEST_CASE("toric curve ODE") {
    const Catalog& cat = Catalog::instance();
    VarsPtr t = make_vars({"t"});
    LinearODE gd = picard_fuchs_ode(weierstrass_family(cat.ratfunc("wp123.g2", t), cat.ratfunc("wp123.g3", t), t), 2);
    LinearODE expected = ode_of({RatFunc(60), parse_ratfunc("864*t - 1", t), parse_ratfunc("t*(432*t - 1)", t)}, t);
    CHECK(gd.normalize().coefficients == expected.coefficients);
  }

  TEST_CASE("Inose system contains the displayed operators") {
    const Catalog& cat = Catalog::instance();
    const K3Family& f = inose_family();
    VarsPtr bd = f.bd.params;
    for (const char* key : {"inose.GDbd1", "inose.GDbd2"}) {
      DiffOperator op = cat.op(key, bd);
      CHECK(annihilates_period(f.table, op));
      CHECK(in_function_span(f.bd.equations, op));
    }
    DiffOperator op2 = cat.op("inose.GDbd2", bd);
    CHECK(op2.coeff(MultiIndex{0, 0}) == RatFunc(Rational(5, 36)));
    CHECK_FALSE(annihilates_period(f.table, op2 - DiffOperator::multiplication(bd, RatFunc(Rational(1, 36)))));
  }
}
