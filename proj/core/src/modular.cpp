#include "pfk3/modular.hpp"

#include "pfk3/catalog.hpp"
#include "pfk3/ode_calculus.hpp"

namespace pfk3 {

namespace {

std::string param_var(const ModularParametrization& m) {
  if (!m.ring || m.ring->size() != 1) throw StructuralError("parametrization must be in one variable");
  return m.ring->name(0);
}

RatFunc dt(const RatFunc& f, const std::string& t) {
  VarsPtr v = f.vars();
  if (!v || v->index(t) < 0) return RatFunc();
  return f.derivative(t);
}

}  // namespace

WInvariants w_invariants(const RatFunc& a, const RatFunc& b_sq, const RatFunc& d) {
  if (d.is_zero()) throw StructuralError("d must be nonzero");
  return {a * a * a / d, b_sq / d};
}

WInvariants w_from_j_pair(const RatFunc& j1, const RatFunc& j2) {
  return {j1 * j2, (j1 - RatFunc(1)) * (j2 - RatFunc(1))};
}

ModularParametrization ModularParametrization::from_j_pair(const RatFunc& j1, const RatFunc& j2, const VarsPtr& ring) {
  ModularParametrization m;
  m.ring = ring;
  m.j_pair = std::make_pair(j1, j2);
  RatFunc p = j1 * j2;
  if (p.is_zero()) throw StructuralError("j1 j2 must be nonzero");
  m.b_sq = (j1 - RatFunc(1)) * (j2 - RatFunc(1)) / p;
  m.d = p.inverse();
  m.source = "j-pair";
  return m;
}

ModularParametrization ModularParametrization::from_symmetric(const RatFunc& b_sq, const RatFunc& d, const VarsPtr& ring) {
  if (d.is_zero()) throw StructuralError("d must be nonzero");
  ModularParametrization m;
  m.ring = ring;
  m.b_sq = b_sq;
  m.d = d;
  m.source = "symmetric";
  return m;
}

int weighted_degree(const Poly& p, const std::vector<int>& weights) {
  int w = -1;
  for (const auto& [m, c] : p.terms()) {
    int s = 0;
    for (size_t i = 0; i < weights.size(); ++i) s += weights[i] * static_cast<int>(m[static_cast<int>(i)]);
    if (w >= 0 && s != w) throw StructuralError("polynomial is not weighted homogeneous");
    w = s;
  }
  return w;
}

PsiPolynomial catalog_psi(int n) {
  if (n != 2 && n != 3) throw StructuralError("unsupported level " + std::to_string(n) + "; supported levels: 2, 3");
  const Catalog& cat = Catalog::instance();
  std::string key = "psi" + std::to_string(n);
  PsiPolynomial p;
  p.level = n;
  p.poly = cat.poly(key, cat.ring(key));
  p.weight = weighted_degree(p.poly, {2, 3, 6});
  return p;
}

ModularParametrization catalog_parametrization(int n) {
  if (n != 2 && n != 3 && n != 6) throw StructuralError("unsupported level " + std::to_string(n) + "; supported levels: 2, 3, 6");
  const Catalog& cat = Catalog::instance();
  std::string pre = "param" + std::to_string(n);
  VarsPtr ring = make_vars({"t"});
  ModularParametrization m = ModularParametrization::from_symmetric(cat.ratfunc(pre + ".b_sq", ring), cat.ratfunc(pre + ".d", ring), ring);
  m.level = n;
  m.source = "catalog " + pre;
  return m;
}

QuadraticExtension::QuadraticExtension(RatFunc sigma, RatFunc pi, std::string var)
    : sigma_(std::move(sigma)), pi_(std::move(pi)), var_(std::move(var)) {
  if ((sigma_ * sigma_ - RatFunc(4) * pi_).is_zero()) throw StructuralError("quadratic extension needs a nonzero discriminant");
  // X^2 - sigma X + pi = 0 gives X' (2X - sigma) = sigma' X - pi'.
  QuadElement lhs{-sigma_, RatFunc(2)};
  QuadElement rhs{-dt(pi_, var_), dt(sigma_, var_)};
  dx_ = mul(rhs, inverse(lhs));
}

QuadElement QuadraticExtension::add(const QuadElement& a, const QuadElement& b) const { return {a.u + b.u, a.v + b.v}; }

QuadElement QuadraticExtension::sub(const QuadElement& a, const QuadElement& b) const { return {a.u - b.u, a.v - b.v}; }

QuadElement QuadraticExtension::mul(const QuadElement& a, const QuadElement& b) const {
  RatFunc vv = a.v * b.v;
  return {a.u * b.u - vv * pi_, a.u * b.v + a.v * b.u + vv * sigma_};
}

QuadElement QuadraticExtension::inverse(const QuadElement& a) const {
  RatFunc norm = a.u * a.u + a.u * a.v * sigma_ + a.v * a.v * pi_;
  if (norm.is_zero()) throw ComputationError("element of the quadratic extension is not invertible");
  return {(a.u + a.v * sigma_) / norm, -a.v / norm};
}

QuadElement QuadraticExtension::derivative(const QuadElement& a) const {
  QuadElement r{dt(a.u, var_), dt(a.v, var_)};
  return add(r, mul(constant(a.v), dx_));
}

QuadElement QuadraticExtension::box(const QuadElement& j) const {
  QuadElement d1 = derivative(j);
  if (is_zero(d1)) throw StructuralError("Box needs nonconstant functions of a complex variable");
  QuadElement d2 = derivative(d1);
  QuadElement d3 = derivative(d2);
  QuadElement jm = sub(j, constant(RatFunc(1)));
  QuadElement num = add(sub(mul(constant(RatFunc(36)), mul(j, j)), mul(constant(RatFunc(41)), j)), constant(RatFunc(32)));
  QuadElement den = mul(constant(RatFunc(144)), mul(mul(jm, jm), mul(j, j)));
  QuadElement q = mul(num, inverse(den));
  QuadElement schw_num = sub(mul(constant(RatFunc(2)), mul(d1, d3)), mul(constant(RatFunc(3)), mul(d2, d2)));
  QuadElement schw = mul(schw_num, inverse(mul(constant(RatFunc(2)), mul(d1, d1))));
  return add(mul(mul(d1, d1), q), mul(constant(RatFunc(Rational(1, 2))), schw));
}

JPairResult symmetric_to_j_pair(const ModularParametrization& m) {
  if (!m.b_sq || !m.d) throw StructuralError("symmetric representation missing");
  if (m.d->is_zero()) throw StructuralError("d must be nonzero");
  JPairResult r;
  r.pi = m.d->inverse();
  r.sigma = r.pi + RatFunc(1) - *m.b_sq * r.pi;
  r.discriminant = r.sigma * r.sigma - RatFunc(4) * r.pi;
  if (r.discriminant.is_zero()) {
    r.rational = true;
    r.roots = std::make_pair(r.sigma / RatFunc(2), r.sigma / RatFunc(2));
    return r;
  }
  std::optional<RatFunc> s;
  VarsPtr v = r.discriminant.vars();
  if (r.discriminant.is_constant()) {
    // Only the square test over Q is needed for constants.
    Rational c = r.discriminant.constant_value();
    if (sgn(c) > 0) {
      mpz_class n = c.get_num();
      mpz_class d = c.get_den();
      if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) s = RatFunc(Rational(sqrt(n), sqrt(d)));
    }
  } else if (v && v->size() == 1) {
    s = ratfunc_sqrt(r.discriminant);
  }
  if (s) {
    r.rational = true;
    r.roots = std::make_pair((r.sigma + *s) / RatFunc(2), (r.sigma - *s) / RatFunc(2));
  }
  return r;
}

MasterEquationReport master_equation_report(const ModularParametrization& m) {
  const std::string t = param_var(m);
  MasterEquationReport rep;
  std::optional<std::pair<RatFunc, RatFunc>> pair = m.j_pair;
  JPairResult jp;
  if (!pair) {
    jp = symmetric_to_j_pair(m);
    if (jp.rational) pair = jp.roots;
  }
  if (pair) {
    if (pair->first.is_constant() || pair->second.is_constant())
      throw StructuralError("master equation needs nonconstant functions of a complex variable");
    rep.box1 = box(pair->first, t);
    rep.box2 = box(pair->second, t);
    rep.holds = rep.box1 == rep.box2;
    rep.difference = {rep.box1 - rep.box2, RatFunc()};
    return rep;
  }
  if (jp.sigma.is_constant() && jp.pi.is_constant())
    throw StructuralError("master equation needs nonconstant functions of a complex variable");
  rep.in_extension = true;
  QuadraticExtension ext(jp.sigma, jp.pi, t);
  QuadElement b1 = ext.box(ext.generator());
  QuadElement b2 = ext.box(ext.conjugate_generator());
  rep.difference = ext.sub(b1, b2);
  rep.holds = QuadraticExtension::is_zero(rep.difference);
  return rep;
}

bool master_equation_check(const ModularParametrization& m) { return master_equation_report(m).holds; }

RatFunc psi_substituted(int n, const RatFunc& b_sq, const RatFunc& d) {
  PsiPolynomial psi = catalog_psi(n);
  RatFunc acc;
  for (const auto& [m, c] : psi.poly.terms()) {
    unsigned eb = m[1];
    if (eb % 2) throw StructuralError("Psi is not even in b");
    acc += RatFunc(c) * b_sq.pow(static_cast<int>(eb / 2)) * d.pow(static_cast<int>(m[2]));
  }
  return acc;
}

bool psi_vanishing_check(int n, const RatFunc& b_sq, const RatFunc& d) { return psi_substituted(n, b_sq, d).is_zero(); }

bool psi_vanishing_check(int n) {
  ModularParametrization m = catalog_parametrization(n);
  return psi_vanishing_check(n, *m.b_sq, *m.d);
}

std::vector<std::string> qvalue_labels() { return {"j", "Gamma0(3)+3", "Gamma0(6)+3"}; }

HauptmodulRecord qvalue_catalog(const std::string& label) {
  for (const auto& l : qvalue_labels())
    if (l == label) return {label, Catalog::instance().ratfunc("qvalue." + label)};
  std::string known;
  for (const auto& l : qvalue_labels()) known += (known.empty() ? "" : ", ") + l;
  throw StructuralError("unknown Q-value label '" + label + "'; known labels: " + known);
}

Level2Report level2_hauptmodul_example(std::optional<RatFunc> h2_override, const std::string& qvalue_label) {
  const Catalog& cat = Catalog::instance();
  VarsPtr tr = make_vars({"t"});
  RatFunc h1 = cat.ratfunc("level2.h1", tr);
  RatFunc h2 = h2_override ? *h2_override : cat.ratfunc("level2.h2", tr);
  Level2Report r;
  r.phi_value = cat.evaluate("level2.phi2", {{"h1", h1}, {"h2", h2}});
  r.phi_vanishes = r.phi_value.is_zero();
  RatFunc q = qvalue_catalog(qvalue_label).q_value;
  r.transport1 = qvalue_transport(h1, q, "t");
  r.transport2 = qvalue_transport(h2, q, "t");
  r.transports_agree = r.transport1 == r.transport2;
  r.expected = cat.ratfunc("qvalue.Gamma0(6)+3", tr);
  r.matches_record = r.transports_agree && r.transport1 == r.expected;
  return r;
}

}  // namespace pfk3
