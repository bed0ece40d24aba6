#include "pfk3/families.hpp"

#include <chrono>

#include "pfk3/catalog.hpp"

namespace pfk3 {

namespace {

K3Family build() {
  auto start = std::chrono::steady_clock::now();
  const Catalog& cat = Catalog::instance();
  K3Family f;
  VarsPtr coords = make_vars({"x", "y", "z", "w"});
  VarsPtr params = make_vars({"b", "d"});
  GeoPoly q = geometric_polynomial(cat.ratfunc("inose.Q"), coords, params);
  f.hypersurface = std::make_unique<Hypersurface>(q, params);
  f.table = derivative_table(*f.hypersurface, 2);
  f.bd = picard_fuchs_system(*f.hypersurface, 2);
  f.ud = square_rewrite(f.bd, "b", "u");
  VarsPtr jr = make_vars({"j1", "j2"});
  f.jj = change_parameters(f.ud, jr, {{"u", cat.ratfunc("inose.b_sq", jr)}, {"d", cat.ratfunc("inose.d", jr)}});
  f.hol_ud = holonomic_from_pair(f.ud);
  f.hol_jj = holonomic_from_pair(f.jj);
  f.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return f;
}

}  // namespace

Hypersurface weierstrass_family(const RatFunc& g2, const RatFunc& g3, const VarsPtr& params) {
  std::vector<std::string> names{"x", "y", "z"};
  if (params)
    for (const auto& n : params->names()) names.push_back(n);
  VarsPtr all = make_vars(names);
  VarsPtr coords = make_vars({"x", "y", "z"});
  std::map<std::string, RatFunc> env{{"x", RatFunc::variable(all, "x")},
                                     {"y", RatFunc::variable(all, "y")},
                                     {"z", RatFunc::variable(all, "z")},
                                     {"g2", g2.embed(all)},
                                     {"g3", g3.embed(all)}};
  RatFunc q = Catalog::instance().evaluate("weierstrass.Q", env);
  return Hypersurface(geometric_polynomial(q, coords, params), params);
}

std::vector<RatFunc> weierstrass_closed_form(const RatFunc& g2, const RatFunc& g3, std::string_view t) {
  auto d = [&](const RatFunc& f) {
    VarsPtr v = f.vars();
    return (!v || v->index(t) < 0) ? RatFunc() : f.derivative(t);
  };
  std::map<std::string, RatFunc> env{{"g2", g2}, {"g3", g3}, {"dg2", d(g2)}, {"dg3", d(g3)}, {"ddg2", d(d(g2))}, {"ddg3", d(d(g3))}};
  const Catalog& cat = Catalog::instance();
  return {cat.evaluate("weierstrass.A0", env), cat.evaluate("weierstrass.A1", env), cat.evaluate("weierstrass.A2", env)};
}

std::pair<RatFunc, RatFunc> weierstrass_monic_closed_form(const RatFunc& g2, const RatFunc& g3, std::string_view t) {
  auto d = [&](const RatFunc& f) {
    VarsPtr v = f.vars();
    return (!v || v->index(t) < 0) ? RatFunc() : f.derivative(t);
  };
  RatFunc delta = g2 * g2 * g2 - RatFunc(27) * g3 * g3;
  if (delta.is_zero()) throw ComputationError("singular family: Delta vanishes identically");
  RatFunc j = g2 * g2 * g2 / delta;
  const Catalog& cat = Catalog::instance();
  RatFunc b1 = cat.evaluate("weierstrass.B1", {{"g2", g2}, {"g3", g3}, {"dg2", d(g2)}, {"dg3", d(g3)}, {"j", j}, {"dj", d(j)}, {"ddj", d(d(j))}});
  RatFunc b0 = cat.evaluate("weierstrass.B0", {{"j", j}, {"dj", d(j)}, {"D", delta}, {"dD", d(delta)}, {"ddD", d(d(delta))}, {"B1", b1}});
  return {b1, b0};
}

const K3Family& inose_family() {
  static const K3Family family = build();
  return family;
}

CurveRestriction restrict_symmetric(const RatFunc& b_sq, const RatFunc& d, const VarsPtr& t_ring) {
  return restrict_to_curve(inose_family().hol_ud, b_sq, d, t_ring);
}

CurveRestriction restrict_j_pair(const RatFunc& j1, const RatFunc& j2, const VarsPtr& t_ring) {
  return restrict_to_curve(inose_family().hol_jj, j1, j2, t_ring);
}

}  // namespace pfk3
