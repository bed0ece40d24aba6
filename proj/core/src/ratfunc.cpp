#include "pfk3/ratfunc.hpp"

namespace pfk3 {

RatFunc::RatFunc(const Poly& p) : num_(p), den_(one()) {
  if (p.is_constant()) num_ = Poly::constant(nullptr, p.constant_value());
}

RatFunc::RatFunc(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw ComputationError("rational function with zero denominator");
  VarsPtr v = unify_vars(num.vars(), den.vars());
  if (num.is_zero()) {
    num_ = Poly();
    den_ = one();
    return;
  }
  if (den.is_constant()) {
    *this = make_reduced(num, den);
    return;
  }
  Poly g = poly_gcd(num.with_vars(v), den.with_vars(v));
  if (g.is_constant()) {
    *this = make_reduced(num.with_vars(v), den.with_vars(v));
  } else {
    *this = make_reduced(num.with_vars(v).exact_div(g), den.with_vars(v).exact_div(g));
  }
}

RatFunc RatFunc::make_reduced(Poly num, Poly den) {
  RatFunc r;
  if (num.is_zero()) {
    r.den_ = one();
    return r;
  }
  Rational c = rational_content(den);
  if (c != 1) {
    Rational inv = Rational(1) / c;
    den = den.scale(inv);
    num = num.scale(inv);
  }
  if (den.is_constant() && num.is_constant()) {
    r.num_ = Poly::constant(nullptr, num.constant_value());
    r.den_ = one();
    return r;
  }
  if (den.is_constant()) den = one();
  VarsPtr v = unify_vars(num.vars(), den.vars());
  r.num_ = num.with_vars(v);
  r.den_ = den.is_constant() ? one() : den.with_vars(v);
  return r;
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw StructuralError("rational function is not constant");
  return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw ComputationError("inverse of zero rational function");
  return make_reduced(den_, num_);
}

RatFunc RatFunc::add(const RatFunc& a, const RatFunc& b, bool subtract) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return subtract ? -b : b;
  const Poly& an = a.num_;
  Poly bn = subtract ? -b.num_ : b.num_;
  if (a.den_.is_constant() && b.den_.is_constant()) return make_reduced(an + bn, one());
  if (a.den_ == b.den_) {
    Poly n = an + bn;
    if (n.is_zero()) return RatFunc();
    Poly g = poly_gcd(n, a.den_);
    if (g.is_constant()) return make_reduced(n, a.den_);
    return make_reduced(n.exact_div(g), a.den_.exact_div(g));
  }
  if (a.den_.is_constant()) return make_reduced(an * b.den_ + bn, b.den_);
  if (b.den_.is_constant()) return make_reduced(an + bn * a.den_, a.den_);
  Poly g = poly_gcd(a.den_, b.den_);
  if (g.is_constant()) return make_reduced(an * b.den_ + bn * a.den_, a.den_ * b.den_);
  Poly ad = a.den_.exact_div(g);
  Poly bd = b.den_.exact_div(g);
  Poly n = an * bd + bn * ad;
  if (n.is_zero()) return RatFunc();
  Poly d = ad * b.den_;
  Poly g2 = poly_gcd(n, g);
  if (g2.is_constant()) return make_reduced(n, d);
  return make_reduced(n.exact_div(g2), d.exact_div(g2));
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  if (a.is_constant()) {
    if (a.num_.constant_value() == 1) return b;
    RatFunc r = b;
    r.num_ = b.num_.scale(a.num_.constant_value());
    return r;
  }
  if (b.is_constant()) return b * a;
  Poly an = a.num_;
  Poly ad = a.den_;
  Poly bn = b.num_;
  Poly bd = b.den_;
  if (!bd.is_constant() && !an.is_constant()) {
    Poly g = poly_gcd(an, bd);
    if (!g.is_constant()) {
      an = an.exact_div(g);
      bd = bd.exact_div(g);
    }
  }
  if (!ad.is_constant() && !bn.is_constant()) {
    Poly g = poly_gcd(bn, ad);
    if (!g.is_constant()) {
      bn = bn.exact_div(g);
      ad = ad.exact_div(g);
    }
  }
  return RatFunc::make_reduced(an * bn, ad * bd);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r;
  r.num_ = num_.pow(static_cast<unsigned>(e));
  r.den_ = den_.pow(static_cast<unsigned>(e));
  if (r.num_.is_constant() && r.den_.is_constant()) return make_reduced(r.num_, r.den_);
  return r;
}

RatFunc RatFunc::derivative(int var) const {
  if (is_constant()) return RatFunc();
  Poly dn = num_.derivative(var);
  if (den_.is_constant()) return make_reduced(dn, one());
  Poly dd = den_.derivative(var);
  if (dd.is_zero()) return RatFunc(dn, den_);
  // (n'd - nd')/d^2 with the common factor gcd(d, d') removed first.
  Poly g = poly_gcd(den_, dd);
  Poly dg = den_.exact_div(g);
  Poly ddg = dd.exact_div(g);
  Poly n = dn * dg - num_ * ddg;
  return RatFunc(n, den_ * dg);
}

RatFunc RatFunc::derivative(std::string_view name) const {
  VarsPtr v = vars();
  if (!v) return RatFunc();
  int i = v->index(name);
  if (i < 0) throw StructuralError("unknown variable '" + std::string(name) + "'");
  return derivative(i);
}

Rational RatFunc::evaluate(const std::vector<Rational>& point) const {
  auto lift = [](const Rational& q) { return q; };
  Rational d = den_.evaluate<Rational>(point, Rational(1), lift);
  if (sgn(d) == 0) throw ComputationError("rational function evaluated at a pole");
  return num_.evaluate<Rational>(point, Rational(1), lift) / d;
}

RatFunc RatFunc::substitute(const std::vector<RatFunc>& values) const {
  auto lift = [](const Rational& q) { return RatFunc(q); };
  RatFunc n = num_.evaluate<RatFunc>(values, RatFunc(1), lift);
  if (den_.is_constant()) return n;
  RatFunc d = den_.evaluate<RatFunc>(values, RatFunc(1), lift);
  return n / d;
}

RatFunc RatFunc::substitute(const std::map<std::string, RatFunc>& values, const VarsPtr& target) const {
  VarsPtr v = vars();
  if (!v) return *this;
  std::vector<RatFunc> vals;
  for (const auto& name : v->names()) {
    auto it = values.find(name);
    if (it != values.end()) {
      vals.push_back(it->second);
    } else {
      if (!target || target->index(name) < 0)
        throw StructuralError("substitute: variable '" + name + "' has no value and is absent from the target ring");
      vals.push_back(RatFunc::variable(target, name));
    }
  }
  return substitute(vals);
}

Poly embed_poly(const Poly& p, const VarsPtr& target) {
  if (!p.vars() || p.is_constant()) {
    return p.is_zero() ? Poly(target) : Poly::constant(target, p.constant_value());
  }
  if (same_vars(p.vars(), target)) return p.with_vars(target);
  std::vector<int> map(static_cast<size_t>(p.vars()->size()));
  for (int i = 0; i < p.vars()->size(); ++i) {
    int j = target->index(p.vars()->name(i));
    map[static_cast<size_t>(i)] = j;
  }
  std::vector<Poly::Term> ts;
  ts.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    Monomial mm;
    for (int i = 0; i < p.vars()->size(); ++i) {
      if (!m[i]) continue;
      int j = map[static_cast<size_t>(i)];
      if (j < 0) throw StructuralError("embed: variable '" + p.vars()->name(i) + "' missing from target ring");
      mm.e[static_cast<size_t>(j)] = static_cast<uint16_t>(m[i]);
    }
    mm.deg = m.deg;
    ts.emplace_back(mm, c);
  }
  return Poly(target, std::move(ts));
}

RatFunc RatFunc::embed(const VarsPtr& target) const {
  if (is_constant()) return *this;
  RatFunc r;
  r.num_ = embed_poly(num_, target);
  r.den_ = den_.is_constant() ? one() : embed_poly(den_, target);
  // Leading terms may change under a different variable order; renormalize the sign.
  return make_reduced(r.num_, r.den_);
}

std::string RatFunc::to_string() const {
  // Print with integer coefficients: (p*N)/(q*D).
  Rational c = rational_content(num_);
  Poly n = num_.scale(Rational(1) / c);
  Integer p = c.get_num();
  Integer q = c.get_den();
  Poly top = n.scale(Rational(p));
  auto wrap = [](const std::string& s) {
    return s.find_first_of("+-*/", 1) == std::string::npos ? s : "(" + s + ")";
  };
  if (num_.is_zero()) return "0";
  if (den_.is_constant() && q == 1) return top.to_string();
  Poly bottom = den_.scale(Rational(q));
  std::string ts = top.to_string();
  std::string bs = bottom.to_string();
  bool plain_top = ts.find_first_of("+-*/", 1) == std::string::npos;
  return (plain_top ? ts : "(" + ts + ")") + "/" + wrap(bs);
}

std::optional<RatFunc> ratfunc_sqrt(const RatFunc& f) {
  if (f.is_zero()) return f;
  auto r = poly_sqrt(f.num() * f.den());
  if (!r) return std::nullopt;
  return RatFunc(*r, f.den());
}

}  // namespace pfk3
