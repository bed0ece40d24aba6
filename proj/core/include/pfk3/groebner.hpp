#pragma once

#include <algorithm>
#include <optional>
#include <tuple>
#include <vector>

#include "pfk3/polynomial.hpp"

namespace pfk3 {

template <class K>
struct Ideal {
  std::vector<Polynomial<K>> generators;

  explicit Ideal(std::vector<Polynomial<K>> gens) : generators(std::move(gens)) {
    if (generators.empty()) throw StructuralError("ideal needs at least one generator");
    for (const auto& g : generators)
      if (g.is_zero()) throw StructuralError("zero generator in ideal");
    for (const auto& g : generators) vars_ = unify_vars(vars_, g.vars());
  }
  const VarsPtr& vars() const { return vars_; }

 private:
  VarsPtr vars_;
};

/**
 * @brief Reduced Groebner basis (grevlex) with cofactors.
 *
 * basis[i] == sum_j cofactors[i][j] * generators[j] holds exactly.
 */
template <class K>
struct GroebnerBasis {
  std::vector<Polynomial<K>> generators;
  std::vector<Polynomial<K>> basis;
  std::vector<std::vector<Polynomial<K>>> cofactors;
  VarsPtr vars;

  bool contains_unit() const {
    return std::any_of(basis.begin(), basis.end(), [](const auto& g) { return g.is_constant(); });
  }

  /// True when every variable has a pure power among the leading monomials.
  bool zero_dimensional() const {
    int n = vars ? vars->size() : 0;
    for (int i = 0; i < n; ++i) {
      bool found = false;
      for (const auto& g : basis) {
        const Monomial& m = g.lead_monomial();
        if (m[i] == m.deg && m.deg > 0) found = true;
      }
      if (!found) return false;
    }
    return true;
  }

  bool is_standard(const Monomial& m) const {
    for (const auto& g : basis)
      if (g.lead_monomial().divides(m)) return false;
    return true;
  }

  /// Monomials of degree d not in the leading-term ideal, decreasing.
  std::vector<Monomial> standard_monomials(int d) const {
    std::vector<Monomial> out;
    for (const auto& m : monomials_of_degree(vars->size(), d))
      if (is_standard(m)) out.push_back(m);
    return out;
  }
};

template <class K>
struct NormalForm {
  Polynomial<K> remainder;
  std::vector<Polynomial<K>> quotients;  // one per basis element
};

namespace detail {

template <class K>
struct Tracked {
  Polynomial<K> poly;
  std::vector<Polynomial<K>> cof;
};

template <class K>
void track_sub(Tracked<K>& h, const Monomial& m, const K& c, const Tracked<K>& g) {
  h.poly = h.poly.sub_mul_term(m, c, g.poly);
  for (size_t j = 0; j < h.cof.size(); ++j) h.cof[j] = h.cof[j].sub_mul_term(m, c, g.cof[j]);
}

template <class K>
void track_scale(Tracked<K>& h, const K& c) {
  h.poly = h.poly.scale(c);
  for (auto& x : h.cof) x = x.scale(c);
}

/// Full reduction of h by the set, tracking cofactors; reducer = first element whose lead divides.
template <class K>
void full_reduce(Tracked<K>& h, const std::vector<Tracked<K>>& set, const std::vector<size_t>& active) {
  VarsPtr vars = h.poly.vars();
  std::vector<typename Polynomial<K>::Term> rterms;
  while (!h.poly.is_zero()) {
    const Monomial lm = h.poly.lead_monomial();
    const K lc = h.poly.lead_coeff();
    bool reduced = false;
    for (size_t idx : active) {
      const auto& g = set[idx];
      if (g.poly.lead_monomial().divides(lm)) {
        track_sub(h, lm / g.poly.lead_monomial(), K(lc / g.poly.lead_coeff()), g);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rterms.emplace_back(lm, lc);
      h.poly = h.poly.tail();
    }
  }
  h.poly = Polynomial<K>(vars, std::move(rterms));
}

}  // namespace detail

template <class K>
GroebnerBasis<K> buchberger(const Ideal<K>& ideal) {
  using P = Polynomial<K>;
  using T = detail::Tracked<K>;
  const size_t ng = ideal.generators.size();
  VarsPtr vars = ideal.vars();

  std::vector<T> set;
  std::vector<size_t> active;
  // Pairs (i, j) with i < j, processed in order of lcm degree, then lcm, then indices.
  struct Pair {
    size_t i;
    size_t j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;

  auto pair_less = [](const Pair& a, const Pair& b) {
    if (a.lcm.deg != b.lcm.deg) return a.lcm.deg < b.lcm.deg;
    int c = grevlex_cmp(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    return std::tie(a.j, a.i) < std::tie(b.j, b.i);
  };

  auto add_element = [&](T t) {
    K inv = K(1) / t.poly.lead_coeff();
    detail::track_scale(t, inv);
    size_t k = set.size();
    set.push_back(std::move(t));
    for (size_t i : active) pairs.push_back({i, k, Monomial::lcm(set[i].poly.lead_monomial(), set[k].poly.lead_monomial())});
    active.push_back(k);
  };

  for (size_t j = 0; j < ng; ++j) {
    T t{ideal.generators[j].with_vars(vars), std::vector<P>(ng, P(vars))};
    t.cof[j] = P::constant(vars, K(1));
    detail::full_reduce(t, set, active);
    if (!t.poly.is_zero()) add_element(std::move(t));
  }

  std::vector<std::vector<bool>> done;
  auto mark_done = [&](size_t i, size_t j) {
    size_t n = std::max(i, j) + 1;
    if (done.size() < n) done.resize(n);
    for (auto& row : done)
      if (row.size() < n) row.resize(n, false);
    done[i][j] = done[j][i] = true;
  };
  auto is_done = [&](size_t i, size_t j) { return i < done.size() && j < done[i].size() && done[i][j]; };

  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), pair_less);
    Pair pr = *it;
    pairs.erase(it);
    mark_done(pr.i, pr.j);
    const auto& fi = set[pr.i];
    const auto& fj = set[pr.j];
    // First criterion: coprime leading monomials.
    if (fi.poly.lead_monomial().coprime(fj.poly.lead_monomial())) continue;
    // Second criterion: some g_k with lt(g_k) | lcm and both companion pairs finished.
    bool chain = false;
    for (size_t k : active) {
      if (k == pr.i || k == pr.j) continue;
      if (set[k].poly.lead_monomial().divides(pr.lcm) && is_done(pr.i, k) && is_done(pr.j, k)) {
        chain = true;
        break;
      }
    }
    if (chain) continue;
    T s{P(vars), std::vector<P>(ng, P(vars))};
    Monomial mi = pr.lcm / fi.poly.lead_monomial();
    Monomial mj = pr.lcm / fj.poly.lead_monomial();
    s.poly = fi.poly.mul_term(mi, K(1));
    for (size_t c = 0; c < ng; ++c) s.cof[c] = fi.cof[c].mul_term(mi, K(1));
    detail::track_sub(s, mj, K(1), fj);
    detail::full_reduce(s, set, active);
    if (!s.poly.is_zero()) add_element(std::move(s));
  }

  // Minimalize, then inter-reduce.
  std::vector<size_t> minimal;
  for (size_t a : active) {
    bool redundant = false;
    for (size_t b : active) {
      if (a == b) continue;
      const Monomial& la = set[a].poly.lead_monomial();
      const Monomial& lb = set[b].poly.lead_monomial();
      if (lb.divides(la) && (!(la == lb) || b < a)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(a);
  }
  std::vector<T> reduced;
  for (size_t a : minimal) {
    std::vector<size_t> others;
    for (size_t b : minimal)
      if (b != a) others.push_back(b);
    T t = set[a];
    // Keep the leading term, reduce the tail.
    T lead{P::monomial(vars, t.poly.lead_monomial(), t.poly.lead_coeff()), std::vector<P>(ng, P(vars))};
    T tail{t.poly - lead.poly, t.cof};
    detail::full_reduce(tail, set, others);
    t.poly = lead.poly + tail.poly;
    t.cof = tail.cof;
    reduced.push_back(std::move(t));
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const T& x, const T& y) { return grevlex_cmp(x.poly.lead_monomial(), y.poly.lead_monomial()) < 0; });

  GroebnerBasis<K> gb;
  gb.generators = ideal.generators;
  gb.vars = vars;
  for (auto& t : reduced) {
    gb.basis.push_back(std::move(t.poly));
    gb.cofactors.push_back(std::move(t.cof));
  }
  return gb;
}

/// Division by the reduced basis; p == sum quotients[i]*basis[i] + remainder.
template <class K>
NormalForm<K> normal_form(const Polynomial<K>& p, const GroebnerBasis<K>& gb) {
  using P = Polynomial<K>;
  VarsPtr vars = unify_vars(p.vars(), gb.vars);
  NormalForm<K> nf{P(vars), std::vector<P>(gb.basis.size(), P(vars))};
  std::vector<std::vector<typename P::Term>> qterms(gb.basis.size());
  std::vector<typename P::Term> rterms;
  P h = p.with_vars(vars);
  while (!h.is_zero()) {
    const Monomial lm = h.lead_monomial();
    const K lc = h.lead_coeff();
    bool reduced = false;
    for (size_t i = 0; i < gb.basis.size(); ++i) {
      const auto& g = gb.basis[i];
      if (g.lead_monomial().divides(lm)) {
        Monomial m = lm / g.lead_monomial();
        K c = lc / g.lead_coeff();
        h = h.sub_mul_term(m, c, g);
        qterms[i].emplace_back(m, c);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rterms.emplace_back(lm, lc);
      h = h.tail();
    }
  }
  nf.remainder = P(vars, std::move(rterms));
  for (size_t i = 0; i < qterms.size(); ++i) nf.quotients[i] = P(vars, std::move(qterms[i]));
  return nf;
}

template <class K>
Polynomial<K> reduce(const Polynomial<K>& p, const GroebnerBasis<K>& gb) {
  return normal_form(p, gb).remainder;
}

/// Cofactors A_j with p == sum_j A_j * generators[j]; absent when p is not in the ideal.
template <class K>
std::optional<std::vector<Polynomial<K>>> membership_certificate(const Polynomial<K>& p, const GroebnerBasis<K>& gb) {
  using P = Polynomial<K>;
  NormalForm<K> nf = normal_form(p, gb);
  if (!nf.remainder.is_zero()) return std::nullopt;
  std::vector<P> a(gb.generators.size(), P(gb.vars));
  for (size_t i = 0; i < gb.basis.size(); ++i) {
    if (nf.quotients[i].is_zero()) continue;
    for (size_t j = 0; j < a.size(); ++j)
      if (!gb.cofactors[i][j].is_zero()) a[j] += nf.quotients[i] * gb.cofactors[i][j];
  }
  return a;
}

/// S-polynomial of two basis elements (monic-normalized).
template <class K>
Polynomial<K> s_polynomial(const Polynomial<K>& f, const Polynomial<K>& g) {
  Monomial l = Monomial::lcm(f.lead_monomial(), g.lead_monomial());
  return f.mul_term(l / f.lead_monomial(), K(1) / f.lead_coeff())
      .sub_mul_term(l / g.lead_monomial(), K(1) / g.lead_coeff(), g);
}

}  // namespace pfk3
