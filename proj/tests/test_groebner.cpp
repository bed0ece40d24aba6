#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "pfk3/expr.hpp"
#include "pfk3/families.hpp"
#include "pfk3/griffiths_dwork.hpp"
#include "pfk3/groebner.hpp"
#include "pfk3/random.hpp"
#include "pfk3/verification.hpp"

using namespace pfk3;

namespace {

Poly poly(const std::string& s, const VarsPtr& v) {
  RatFunc f = parse_ratfunc(s, v);
  return f.num().scale(Rational(1) / f.den().constant_value()).with_vars(v);
}

// Reduction that picks a random applicable divisor at each step, including non-leading terms.
Poly random_reduce(Poly h, const std::vector<Poly>& basis, std::mt19937_64& rng) {
  while (true) {
    std::vector<std::pair<size_t, Monomial>> moves;
    for (const auto& [m, c] : h.terms())
      for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i].lead_monomial().divides(m)) moves.emplace_back(i, m);
    if (moves.empty()) return h;
    auto [i, m] = moves[std::uniform_int_distribution<size_t>(0, moves.size() - 1)(rng)];
    h = h.sub_mul_term(m / basis[i].lead_monomial(), h.coeff(m) / basis[i].lead_coeff(), basis[i]);
  }
}

template <class P>
std::set<std::string> leading_set(const std::vector<P>& b) {
  std::set<std::string> out;
  for (const auto& p : b) out.insert(monomial_to_string(p.lead_monomial(), *p.vars()));
  return out;
}

}  // namespace

TEST_SUITE("groebner") {
  TEST_CASE("small examples") {
    VarsPtr v = make_vars({"x", "y"});
    auto gb = buchberger(Ideal<Rational>({poly("x^2 - y", v), poly("y^2 - 1", v)}));
    CHECK(gb.zero_dimensional());
    CHECK(reduce(poly("x^4 - 1", v), gb).is_zero());
    CHECK(reduce(poly("x^3", v), gb) == poly("x*y", v));
    auto unit = buchberger(Ideal<Rational>({poly("x*y - 1", v), poly("x", v)}));
    CHECK(unit.contains_unit());
    auto c = membership_certificate(poly("x^2 - y", v), gb);
    REQUIRE(c.has_value());
    CHECK((*c)[0] == Poly::constant(v, Rational(1)));
    CHECK((*c)[1].is_zero());
  }

  TEST_CASE("property suite (S-pairs, cofactors, certificates, normal forms)") {
    PropertyResult r = groebner_properties(21, 100);
    INFO(r.first_failure);
    CHECK(r.ok());
  }

  TEST_CASE("confluence against randomized reducer selection") {
    VarsPtr v = make_vars({"x", "y", "z"});
    RandomSource rs(22);
    std::mt19937_64 rng(22);
    int done = 0;
    while (done < 100) {
      std::vector<Poly> gens{rs.nonzero_poly(v, 2, 3, 4), rs.nonzero_poly(v, 2, 3, 4), rs.nonzero_poly(v, 2, 2, 4)};
      if (std::any_of(gens.begin(), gens.end(), [](const Poly& p) { return p.is_constant(); })) continue;
      auto gb = buchberger(Ideal<Rational>(gens));
      ++done;
      for (int k = 0; k < 3; ++k) {
        Poly p = rs.poly(v, 4, 5);
        CHECK(random_reduce(p, gb.basis, rng) == reduce(p, gb));
      }
      for (size_t i = 0; i < gb.basis.size(); ++i)
        for (size_t j = i + 1; j < gb.basis.size(); ++j) CHECK(reduce(s_polynomial(gb.basis[i], gb.basis[j]), gb).is_zero());
      Poly member = rs.poly(v, 1, 2) * gens[0] + rs.poly(v, 1, 2) * gens[2];
      auto cert = membership_certificate(member, gb);
      REQUIRE(cert.has_value());
      Poly sum(v);
      for (size_t j = 0; j < gens.size(); ++j) sum += (*cert)[j] * gens[j];
      CHECK(sum == member);
    }
  }

  TEST_CASE("Weierstrass Jacobian basis is stable under specialization") {
    VarsPtr g = make_vars({"g2", "g3"});
    VarsPtr xyz = make_vars({"x", "y", "z"});
    Hypersurface h = weierstrass_family(RatFunc::variable(g, "g2"), RatFunc::variable(g, "g3"), g);
    std::set<std::string> generic = leading_set(h.jacobian().basis);
    RandomSource rs(23);
    int done = 0;
    while (done < 20) {
      Rational a = rs.nonzero_rational(), b = rs.nonzero_rational();
      if (a * a * a - 27 * b * b == 0) continue;
      ++done;
      std::vector<Poly> grad;
      Poly q = poly("y^2*z - 4*x^3 + (" + a.get_str() + ")*x*z^2 + (" + b.get_str() + ")*z^3", xyz);
      for (int i = 0; i < 3; ++i) grad.push_back(q.derivative(i));
      auto special = buchberger(Ideal<Rational>(grad));
      CHECK(leading_set(special.basis) == generic);
    }
  }

  TEST_CASE("Inose Jacobian ideal is proper") {
    const K3Family& f = inose_family();
    CHECK_FALSE(f.hypersurface->jacobian().contains_unit());
  }
}
