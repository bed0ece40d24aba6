#include "pfk3/holonomic.hpp"

#include <algorithm>

#include "pfk3/griffiths_dwork.hpp"

namespace pfk3 {

namespace {

RatFunc diff_named(const RatFunc& f, const std::string& name) {
  VarsPtr v = f.vars();
  if (!v || v->index(name) < 0) return RatFunc();
  return f.derivative(name);
}

// Half the exponent of variable idx; the caller ensures evenness.
Poly halve(const Poly& p, int idx, const VarsPtr& target) {
  std::vector<Poly::Term> ts;
  for (const auto& [m, c] : p.terms()) {
    Monomial mm = m;
    uint16_t e = m[idx];
    mm.e[static_cast<size_t>(idx)] = static_cast<uint16_t>(e / 2);
    mm.deg -= e - e / 2;
    ts.emplace_back(mm, c);
  }
  return Poly(p.is_constant() ? nullptr : target, std::move(ts));
}

bool parity(const Poly& p, int idx, int want) {
  for (const auto& t : p.terms())
    if (static_cast<int>(t.first[idx] % 2) != want) return false;
  return true;
}

RatFunc to_square_ring(const RatFunc& c, const VarsPtr& old_vars, int idx, const VarsPtr& target) {
  if (c.is_constant()) return c;
  Poly num = embed_poly(c.num(), old_vars);
  Poly den = c.den().is_constant() ? c.den() : embed_poly(c.den(), old_vars);
  if (!(parity(num, idx, 0) && parity(den, idx, 0))) {
    if (parity(num, idx, 1) && parity(den, idx, 1)) {
      Poly p = Poly::variable(old_vars, idx);
      num = num.exact_div(p);
      den = den.exact_div(p);
    } else {
      throw ComputationError("coefficient " + c.to_string() + " is not even in " + old_vars->name(idx));
    }
  }
  return RatFunc(halve(num, idx, target), halve(den, idx, target));
}

}  // namespace

DiffOperator square_rewrite(const DiffOperator& op, std::string_view p, std::string_view s) {
  const VarsPtr& old = op.vars();
  int idx = old ? old->index(p) : -1;
  if (idx < 0) throw StructuralError("unknown parameter '" + std::string(p) + "'");
  std::vector<std::string> names = old->names();
  names[static_cast<size_t>(idx)] = std::string(s);
  VarsPtr nv = make_vars(names);
  const size_t n = names.size();
  const std::string pname(p);
  // Mixed terms: coefficient in the old ring, derivative index in the new ring.
  using Mixed = std::map<MultiIndex, RatFunc, MultiIndexLess>;
  Mixed total;
  RatFunc pvar = RatFunc::variable(old, pname);
  for (const auto& [alpha, c] : op.terms()) {
    Mixed cur;
    cur[MultiIndex(n, 0)] = RatFunc(1);
    for (size_t i = 0; i < n; ++i) {
      for (int k = 0; k < alpha[i]; ++k) {
        Mixed next;
        auto add = [&](const MultiIndex& a, const RatFunc& x) {
          if (x.is_zero()) return;
          RatFunc v = next.count(a) ? next[a] + x : x;
          if (v.is_zero())
            next.erase(a);
          else
            next[a] = v;
        };
        for (const auto& [beta, e] : cur) {
          add(beta, diff_named(e, old->name(static_cast<int>(i))));
          MultiIndex b2 = beta;
          ++b2[i];
          add(b2, static_cast<int>(i) == idx ? RatFunc(2) * pvar * e : e);
        }
        cur = std::move(next);
      }
    }
    for (const auto& [beta, e] : cur) {
      RatFunc v = (total.count(beta) ? total[beta] : RatFunc()) + c * e;
      if (v.is_zero())
        total.erase(beta);
      else
        total[beta] = v;
    }
  }
  DiffOperator::Terms out;
  for (const auto& [beta, e] : total) out[beta] = to_square_ring(e, old, idx, nv);
  return DiffOperator(nv, out).normalized();
}

PicardFuchsSystem square_rewrite(const PicardFuchsSystem& sys, std::string_view p, std::string_view s) {
  PicardFuchsSystem out;
  for (const auto& e : sys.equations) out.equations.push_back(square_rewrite(e, p, s));
  if (!out.equations.empty()) {
    out.params = out.equations.front().vars();
  } else if (sys.params) {
    std::vector<std::string> names = sys.params->names();
    int idx = sys.params->index(p);
    if (idx < 0) throw StructuralError("unknown parameter '" + std::string(p) + "'");
    names[static_cast<size_t>(idx)] = std::string(s);
    out.params = make_vars(names);
  }
  return out;
}

namespace {

struct ChainRule {
  VarsPtr nv;
  std::map<std::string, RatFunc> values;
  std::vector<DiffOperator> d_old;  // D_{q_i} in the new variables
};

ChainRule make_chain(const VarsPtr& old, const VarsPtr& nv, const std::map<std::string, RatFunc>& values) {
  const int m = old ? old->size() : 0;
  if (m != (nv ? nv->size() : 0)) throw StructuralError("parameter change must keep the number of parameters");
  ChainRule cr{nv, {}, {}};
  Matrix<RatFunc> jac(static_cast<size_t>(m), std::vector<RatFunc>(static_cast<size_t>(m)));
  for (int i = 0; i < m; ++i) {
    auto it = values.find(old->name(i));
    if (it == values.end()) throw StructuralError("no value for parameter '" + old->name(i) + "'");
    RatFunc f = it->second.is_constant() ? it->second : it->second.embed(nv);
    cr.values[old->name(i)] = f;
    for (int j = 0; j < m; ++j) jac[static_cast<size_t>(i)][static_cast<size_t>(j)] = diff_named(f, nv->name(j));
  }
  if (determinant(jac).is_zero()) throw StructuralError("parameter substitution is not invertible (Jacobian determinant vanishes)");
  Matrix<RatFunc> minv = inverse(transpose(jac));
  for (int i = 0; i < m; ++i) {
    DiffOperator d(nv);
    for (int j = 0; j < m; ++j)
      d = d + DiffOperator::partial(nv, j).scale(minv[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    cr.d_old.push_back(d);
  }
  return cr;
}

DiffOperator apply_chain(const DiffOperator& op, const ChainRule& cr) {
  DiffOperator out(cr.nv);
  std::map<MultiIndex, DiffOperator> powers;
  const size_t m = cr.d_old.size();
  auto power = [&](const MultiIndex& a) -> const DiffOperator& {
    auto it = powers.find(a);
    if (it != powers.end()) return it->second;
    DiffOperator p = DiffOperator::identity(cr.nv);
    for (size_t i = 0; i < m; ++i)
      for (int k = 0; k < a[i]; ++k) p = cr.d_old[i] * p;
    return powers.emplace(a, std::move(p)).first->second;
  };
  for (const auto& [alpha, c] : op.terms()) {
    RatFunc cs = c.substitute(cr.values, cr.nv);
    out = out + power(alpha).scale(cs);
  }
  return out;
}

}  // namespace

DiffOperator change_parameters(const DiffOperator& op, const VarsPtr& new_params, const std::map<std::string, RatFunc>& values) {
  return apply_chain(op, make_chain(op.vars(), new_params, values)).normalized();
}

PicardFuchsSystem change_parameters(const PicardFuchsSystem& sys, const VarsPtr& new_params,
                                    const std::map<std::string, RatFunc>& values) {
  ChainRule cr = make_chain(sys.params, new_params, values);
  PicardFuchsSystem out;
  out.params = new_params;
  for (const auto& e : sys.equations) out.equations.push_back(apply_chain(e, cr).normalized());
  return out;
}

bool in_function_span(const std::vector<DiffOperator>& equations, const DiffOperator& op) {
  std::vector<MultiIndex> keys;
  auto collect = [&](const DiffOperator& d) {
    for (const auto& t : d.terms())
      if (std::find(keys.begin(), keys.end(), t.first) == keys.end()) keys.push_back(t.first);
  };
  for (const auto& e : equations) collect(e);
  collect(op);
  auto row = [&](const DiffOperator& d) {
    std::vector<RatFunc> r;
    for (const auto& k : keys) r.push_back(d.coeff(k));
    return r;
  };
  Matrix<RatFunc> m;
  for (const auto& e : equations) m.push_back(row(e));
  size_t r0 = rank(m);
  m.push_back(row(op));
  return rank(m) == r0;
}

std::vector<RatFunc> HolonomicSystem::reduce(const MultiIndex& alpha) const {
  std::vector<RatFunc> v(4);
  v[0] = RatFunc(1);
  for (size_t i = 0; i < 2; ++i) {
    for (int k = 0; k < alpha[i]; ++k) {
      std::vector<RatFunc> w(4);
      for (size_t b = 0; b < 4; ++b) {
        if (v[b].is_zero()) continue;
        w[b] += diff_named(v[b], params->name(static_cast<int>(i)));
        for (size_t c = 0; c < 4; ++c)
          if (!connection[i][b][c].is_zero()) w[c] += v[b] * connection[i][b][c];
      }
      v = std::move(w);
    }
  }
  return v;
}

HolonomicSystem holonomic_from_pair(const PicardFuchsSystem& sys) {
  if (!sys.params || sys.params->size() != 2) throw StructuralError("holonomic closure needs two parameters");
  if (sys.equations.size() < 2) throw StructuralError("holonomic closure needs two equations");
  HolonomicSystem h;
  h.params = sys.params;
  h.basis = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  const MultiIndex xx{2, 0};
  const MultiIndex yy{0, 2};
  for (const auto& e : sys.equations)
    for (const auto& t : e.terms())
      if (t.first[0] + t.first[1] > 2) throw StructuralError("holonomic closure expects second-order equations");
  // Pick two equations whose (xx, yy) block is invertible.
  const DiffOperator* e1 = nullptr;
  const DiffOperator* e2 = nullptr;
  for (size_t i = 0; i < sys.equations.size() && !e1; ++i)
    for (size_t j = i + 1; j < sys.equations.size() && !e1; ++j) {
      const auto& a = sys.equations[i];
      const auto& b = sys.equations[j];
      if (!(a.coeff(xx) * b.coeff(yy) - a.coeff(yy) * b.coeff(xx)).is_zero()) {
        e1 = &a;
        e2 = &b;
      }
    }
  if (!e1) throw ComputationError("system cannot be solved for both pure second derivatives");
  // [a_xx a_yy; b_xx b_yy] [Fxx; Fyy] = -[rest_a; rest_b]
  Matrix<RatFunc> blk{{e1->coeff(xx), e1->coeff(yy)}, {e2->coeff(xx), e2->coeff(yy)}};
  Matrix<RatFunc> binv = inverse(blk);
  std::vector<RatFunc> ra(4);
  std::vector<RatFunc> rb(4);
  for (size_t b = 0; b < 4; ++b) {
    ra[b] = -e1->coeff(h.basis[b]);
    rb[b] = -e2->coeff(h.basis[b]);
  }
  std::vector<RatFunc> fxx(4);
  std::vector<RatFunc> fyy(4);
  for (size_t b = 0; b < 4; ++b) {
    fxx[b] = binv[0][0] * ra[b] + binv[0][1] * rb[b];
    fyy[b] = binv[1][0] * ra[b] + binv[1][1] * rb[b];
  }
  const std::string x = sys.params->name(0);
  const std::string y = sys.params->name(1);
  auto e = [](size_t i) {
    std::vector<RatFunc> v(4);
    v[i] = RatFunc(1);
    return v;
  };
  // D_y(Fxx) = K1 + fxx[3] * Fxyy and D_x(Fyy) = K2 + fyy[3] * Fxxy.
  auto dy_partial = [&](const std::vector<RatFunc>& v) {
    // D_y of sum v_b V_b, with D_y V_3 unknown: returns known part.
    std::vector<RatFunc> w(4);
    for (size_t b = 0; b < 4; ++b) w[b] += diff_named(v[b], y);
    const std::vector<RatFunc> dy[3] = {e(2), e(3), fyy};
    for (size_t b = 0; b < 3; ++b)
      for (size_t c = 0; c < 4; ++c)
        if (!v[b].is_zero() && !dy[b][c].is_zero()) w[c] += v[b] * dy[b][c];
    return w;
  };
  auto dx_partial = [&](const std::vector<RatFunc>& v) {
    std::vector<RatFunc> w(4);
    for (size_t b = 0; b < 4; ++b) w[b] += diff_named(v[b], x);
    const std::vector<RatFunc> dx[3] = {e(1), fxx, e(3)};
    for (size_t b = 0; b < 3; ++b)
      for (size_t c = 0; c < 4; ++c)
        if (!v[b].is_zero() && !dx[b][c].is_zero()) w[c] += v[b] * dx[b][c];
    return w;
  };
  std::vector<RatFunc> k1 = dy_partial(fxx);
  std::vector<RatFunc> k2 = dx_partial(fyy);
  RatFunc a3 = fxx[3];
  RatFunc b3 = fyy[3];
  RatFunc den = RatFunc(1) - a3 * b3;
  if (den.is_zero()) throw ComputationError("system is not holonomic of rank 4");
  std::vector<RatFunc> fxxy(4);
  std::vector<RatFunc> fxyy(4);
  for (size_t c = 0; c < 4; ++c) {
    fxxy[c] = (k1[c] + a3 * k2[c]) / den;
    fxyy[c] = k2[c] + b3 * fxxy[c];
  }
  h.connection[0] = {e(1), fxx, e(3), fxxy};
  h.connection[1] = {e(2), e(3), fyy, fxyy};
  return h;
}

CurveRestriction restrict_to_curve(const HolonomicSystem& sys, const RatFunc& x, const RatFunc& y, const VarsPtr& t_ring) {
  if (!t_ring || t_ring->size() != 1) throw StructuralError("curve ring must have one variable");
  const std::string t = t_ring->name(0);
  std::map<std::string, RatFunc> at{{sys.params->name(0), x}, {sys.params->name(1), y}};
  RatFunc dx = diff_named(x, t);
  RatFunc dy = diff_named(y, t);
  Matrix<RatFunc> mt(4, std::vector<RatFunc>(4));
  for (size_t b = 0; b < 4; ++b)
    for (size_t c = 0; c < 4; ++c) {
      RatFunc s;
      if (!sys.connection[0][b][c].is_zero()) s += dx * sys.connection[0][b][c].substitute(at, t_ring);
      if (!sys.connection[1][b][c].is_zero()) s += dy * sys.connection[1][b][c].substitute(at, t_ring);
      mt[b][c] = s;
    }
  CurveRestriction r;
  std::vector<RatFunc> e(4);
  e[0] = RatFunc(1);
  r.jets.push_back(e);
  for (int k = 1; k <= 4; ++k) {
    std::vector<RatFunc> n(4);
    for (size_t b = 0; b < 4; ++b) {
      if (e[b].is_zero()) continue;
      n[b] += diff_named(e[b], t);
      for (size_t c = 0; c < 4; ++c)
        if (!mt[b][c].is_zero()) n[c] += e[b] * mt[b][c];
    }
    e = std::move(n);
    r.jets.push_back(e);
  }
  Matrix<RatFunc> w(r.jets.begin(), r.jets.begin() + 4);
  r.wronskian = determinant(w);
  r.cramer.ring = t_ring;
  r.cramer.var = t;
  for (size_t k = 0; k < 5; ++k) {
    Matrix<RatFunc> minor;
    for (size_t j = 0; j < 5; ++j)
      if (j != k) minor.push_back(r.jets[j]);
    RatFunc d = determinant(minor);
    r.cramer.coefficients.push_back((k % 2 == 0) ? d : -d);
  }
  for (size_t m = 0; m < 5; ++m) {
    Matrix<RatFunc> cols = transpose(Matrix<RatFunc>(r.jets.begin(), r.jets.begin() + static_cast<long>(m) + 1));
    Matrix<RatFunc> null = nullspace(cols, m + 1);
    if (!null.empty()) {
      r.ode.ring = t_ring;
      r.ode.var = t;
      r.ode.coefficients = null.front();
      r.ode = r.ode.normalize();
      break;
    }
  }
  return r;
}

OrderDropReport order_drop_report(const LinearODE& ode) {
  OrderDropReport rep;
  rep.order = ode.order();
  LinearODE n = ode.normalized ? ode : ode.normalize();
  rep.leading = n.leading();
  rep.unit = Rational(1);
  if (!rep.leading.num().is_constant()) {
    for (const auto& f : squarefree_decomposition(rep.leading.num(), &rep.unit)) rep.leading_factors.emplace_back(f.factor, f.multiplicity);
  } else {
    rep.unit = rep.leading.num().constant_value();
  }
  rep.order_dropped = rep.order <= 3;
  return rep;
}

}  // namespace pfk3
