#include "pfk3/ode_calculus.hpp"

#include <algorithm>

namespace pfk3 {

namespace {

RatFunc d(const RatFunc& f, std::string_view t) {
  VarsPtr v = f.vars();
  if (!v || v->index(t) < 0) return RatFunc();
  return f.derivative(t);
}

std::string single_var(const RatFunc& f) {
  VarsPtr v = f.vars();
  if (!v || v->size() != 1) throw StructuralError("expected a function of one variable");
  return v->name(0);
}

}  // namespace

RatFunc compose(const RatFunc& f, const RatFunc& g) {
  if (f.is_constant()) return f;
  single_var(f);
  return f.substitute(std::vector<RatFunc>{g});
}

RatFunc schwarzian(const RatFunc& j, std::string_view t) {
  RatFunc d1 = d(j, t);
  if (d1.is_zero()) throw StructuralError("vanishing derivative: Schwarzian of a constant");
  RatFunc d2 = d(d1, t);
  RatFunc d3 = d(d2, t);
  return (RatFunc(2) * d1 * d3 - RatFunc(3) * d2 * d2) / (RatFunc(2) * d1 * d1);
}

RatFunc qvalue_transport(const RatFunc& h, const RatFunc& q_value, std::string_view t) {
  RatFunc d1 = d(h, t);
  if (d1.is_zero()) throw StructuralError("vanishing derivative: hauptmodul parametrization is constant");
  return d1 * d1 * compose(q_value, h) + schwarzian(h, t) / RatFunc(2);
}

RatFunc j_qvalue(const VarsPtr& ring) {
  RatFunc j = RatFunc::variable(ring, ring->name(0));
  RatFunc jm = j - RatFunc(1);
  return (RatFunc(36) * j * j - RatFunc(41) * j + RatFunc(32)) / (RatFunc(144) * jm * jm * j * j);
}

RatFunc box(const RatFunc& j, std::string_view t) {
  if (j.is_constant()) throw StructuralError("vanishing derivative: Box needs a nonconstant j");
  RatFunc d1 = d(j, t);
  if (d1.is_zero()) throw StructuralError("vanishing derivative: Box needs a nonconstant j");
  RatFunc jm = j - RatFunc(1);
  RatFunc q = (RatFunc(36) * j * j - RatFunc(41) * j + RatFunc(32)) / (RatFunc(144) * jm * jm * j * j);
  return d1 * d1 * q + schwarzian(j, t) / RatFunc(2);
}

RatFunc projective_normal_form(const LinearODE& ode) {
  if (ode.order() != 2) throw StructuralError("projective normal form needs a second-order equation");
  if (ode.leading().is_zero()) throw StructuralError("leading coefficient vanishes");
  RatFunc a1 = ode.coefficients[1] / ode.leading();
  RatFunc a0 = ode.coefficients[0] / ode.leading();
  return a0 - a1 * a1 / RatFunc(4) - d(a1, ode.var) / RatFunc(2);
}

LinearODE tensor_product_4(const RatFunc& p2, const RatFunc& q2, const VarsPtr& ring) {
  if (!ring || ring->size() != 1) throw StructuralError("tensor product needs a one-variable ring");
  if (p2 == q2) throw ComputationError("Fano-degenerate: p2 = q2, the tensor formula divides by p2 - q2");
  const std::string t = ring->name(0);
  RatFunc p1 = d(p2, t);
  RatFunc q1 = d(q2, t);
  RatFunc diff = p2 - q2;
  LinearODE ode;
  ode.ring = ring;
  ode.var = t;
  ode.coefficients = {
      diff * diff + d(p1, t) + d(q1, t) + (q1 * q1 - p1 * p1) / diff,
      (p2 * (p1 + RatFunc(5) * q1) - q2 * (RatFunc(5) * p1 + q1)) / diff,
      RatFunc(2) * (p2 + q2),
      (q1 - p1) / diff,
      RatFunc(1),
  };
  return ode;
}

bool fano_check(const RatFunc& p2, const RatFunc& q2) { return p2 == q2; }

PowerSeries PowerSeries::expand(const RatFunc& f, const Rational& t0, size_t terms) {
  std::vector<Rational> c(terms);
  if (f.is_constant()) {
    if (terms) c[0] = f.constant_value();
    return PowerSeries(c);
  }
  single_var(f);
  // Taylor coefficients of num and den at t0, then divide.
  auto taylor = [&](const Poly& p) {
    std::vector<Rational> out(terms);
    Poly q = p;
    Rational fact(1);
    for (size_t k = 0; k < terms; ++k) {
      if (q.is_zero()) break;
      out[k] = (q.is_constant() ? q.constant_value() : q.evaluate<Rational>({t0}, Rational(1), [](const Rational& x) { return x; })) / fact;
      q = q.is_constant() ? Poly() : q.derivative(0);
      fact *= Rational(static_cast<long>(k + 1));
    }
    return out;
  };
  std::vector<Rational> n = taylor(f.num());
  std::vector<Rational> dd = taylor(f.den());
  if (terms && sgn(dd[0]) == 0) throw ComputationError("series expansion at a pole");
  for (size_t k = 0; k < terms; ++k) {
    Rational s = n[k];
    for (size_t i = 1; i <= k; ++i) s -= dd[i] * c[k - i];
    c[k] = s / dd[0];
  }
  return PowerSeries(c);
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  size_t n = std::min(a.size(), b.size());
  std::vector<Rational> c(n);
  for (size_t i = 0; i < n; ++i) c[i] = a[i] + b[i];
  return PowerSeries(c);
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  size_t n = std::min(a.size(), b.size());
  std::vector<Rational> c(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  return PowerSeries(c);
}

PowerSeries PowerSeries::derivative() const {
  if (c_.empty()) return *this;
  std::vector<Rational> c(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return PowerSeries(c);
}

size_t PowerSeries::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return i;
  return c_.size();
}

std::vector<PowerSeries> second_order_solutions(const RatFunc& p, const Rational& t0, size_t terms) {
  PowerSeries ps = PowerSeries::expand(p, t0, terms);
  std::vector<PowerSeries> out;
  for (int which = 0; which < 2; ++which) {
    std::vector<Rational> a(terms);
    if (terms > 0) a[0] = which == 0 ? 1 : 0;
    if (terms > 1) a[1] = which == 0 ? 0 : 1;
    for (size_t n = 0; n + 2 < terms; ++n) {
      Rational s;
      for (size_t k = 0; k <= n; ++k) s += ps[k] * a[n - k];
      a[n + 2] = -s / Rational(static_cast<long>((n + 2) * (n + 1)));
    }
    out.emplace_back(a);
  }
  return out;
}

PowerSeries apply_ode(const LinearODE& ode, const PowerSeries& f, const Rational& t0) {
  size_t n = f.size();
  PowerSeries acc(std::vector<Rational>(n > static_cast<size_t>(ode.order()) ? n - static_cast<size_t>(ode.order()) : 0));
  PowerSeries dk = f;
  for (size_t k = 0; k < ode.coefficients.size(); ++k) {
    PowerSeries c = PowerSeries::expand(ode.coefficients[k], t0, n);
    acc = acc + c * dk;
    dk = dk.derivative();
  }
  return acc;
}

}  // namespace pfk3
