#include "pfk3/griffiths_dwork.hpp"

#include <algorithm>

namespace pfk3 {

namespace {

RatFunc diff_param(const RatFunc& f, std::string_view name) {
  VarsPtr v = f.vars();
  if (!v || v->index(name) < 0) return RatFunc();
  return f.derivative(name);
}

std::vector<uint16_t> exps(const Monomial& m, int n) {
  return std::vector<uint16_t>(m.e.begin(), m.e.begin() + n);
}

}  // namespace

FormClass::FormClass(const GeoPoly& numerator, int pole_order) {
  if (pole_order < 1) throw StructuralError("pole order must be positive");
  if (!numerator.is_zero()) parts.emplace(pole_order, numerator);
}

bool FormClass::is_zero() const { return parts.empty(); }

int FormClass::pole_order() const { return parts.empty() ? 0 : parts.rbegin()->first; }

GeoPoly FormClass::numerator(int k) const {
  auto it = parts.find(k);
  return it == parts.end() ? GeoPoly() : it->second;
}

FormClass& FormClass::operator+=(const FormClass& o) {
  for (const auto& [k, p] : o.parts) {
    auto it = parts.find(k);
    if (it == parts.end()) {
      parts.emplace(k, p);
    } else {
      it->second += p;
      if (it->second.is_zero()) parts.erase(it);
    }
  }
  return *this;
}

FormClass& FormClass::operator-=(const FormClass& o) { return *this += o.scale(RatFunc(-1)); }

FormClass FormClass::scale(const RatFunc& c) const {
  FormClass r;
  if (c.is_zero()) return r;
  for (const auto& [k, p] : parts) r.parts.emplace(k, p.scale(c));
  return r;
}

bool operator==(const FormClass& a, const FormClass& b) {
  if (a.parts.size() != b.parts.size()) return false;
  for (const auto& [k, p] : a.parts) {
    auto it = b.parts.find(k);
    if (it == b.parts.end() || !(it->second == p)) return false;
  }
  return true;
}

Hypersurface::Hypersurface(GeoPoly q, VarsPtr params) : params_(std::move(params)) {
  if (q.is_zero()) throw StructuralError("hypersurface polynomial is zero");
  if (!q.vars()) throw StructuralError("hypersurface polynomial has no coordinates");
  if (!q.is_homogeneous()) throw StructuralError("hypersurface polynomial is not homogeneous");
  q_ = q.map_coeffs<RatFunc>([&](const RatFunc& c) { return params_ ? c.embed(params_) : c; });
  degree_ = q_.total_degree();
  for (int i = 0; i < ambient_count(); ++i) {
    dq_.push_back(q_.derivative(i));
    if (dq_.back().is_zero())
      throw StructuralError("hypersurface does not involve coordinate '" + coordinates()->name(i) + "'");
  }
  gb_ = buchberger(Ideal<RatFunc>(dq_));
}

FormClass Hypersurface::period() const { return FormClass(GeoPoly::constant(coordinates(), RatFunc(1)), 1); }

void Hypersurface::check_homogeneous(const FormClass& f) const {
  for (const auto& [k, p] : f.parts) {
    int d = numerator_degree(k);
    for (const auto& t : p.terms())
      if (static_cast<int>(t.first.deg) != d)
        throw StructuralError("numerator of pole order " + std::to_string(k) + " must have degree " +
                              std::to_string(d) + ", found " + std::to_string(t.first.deg));
  }
}

FormClass Hypersurface::differentiate(const FormClass& f, std::string_view param) const {
  if (!params_ || params_->index(param) < 0) throw StructuralError("unknown parameter '" + std::string(param) + "'");
  auto d = [&](const RatFunc& c) { return diff_param(c, param); };
  GeoPoly dq = q_.map_coeffs<RatFunc>(d);
  FormClass out;
  for (const auto& [k, p] : f.parts) {
    GeoPoly dp = p.map_coeffs<RatFunc>(d);
    if (!dp.is_zero()) out += FormClass(dp, k);
    if (!dq.is_zero()) out += FormClass((p * dq).scale(RatFunc(-k)), k + 1);
  }
  return out;
}

ReductionStep Hypersurface::reduce_pole_order(const FormClass& f) const {
  check_homogeneous(f);
  ReductionStep step;
  step.input = f;
  step.order = f.pole_order();
  if (step.order < 2) throw StructuralError("pole order reduction needs order at least 2");
  const GeoPoly top = f.numerator(step.order);
  NormalForm<RatFunc> nf = normal_form(top, gb_);
  step.remainder = nf.remainder;
  step.cofactors.assign(dq_.size(), GeoPoly(coordinates()));
  for (size_t i = 0; i < gb_.basis.size(); ++i) {
    if (nf.quotients[i].is_zero()) continue;
    for (size_t j = 0; j < dq_.size(); ++j)
      if (!gb_.cofactors[i][j].is_zero()) step.cofactors[j] += nf.quotients[i] * gb_.cofactors[i][j];
  }
  GeoPoly div(coordinates());
  for (size_t j = 0; j < dq_.size(); ++j) div += step.cofactors[j].derivative(static_cast<int>(j));
  step.output = f;
  step.output.parts.erase(step.order);
  if (!step.remainder.is_zero()) step.output.parts.emplace(step.order, step.remainder);
  step.output += FormClass(div.scale(RatFunc(1) / RatFunc(step.order - 1)), step.order - 1);
  return step;
}

const FormClass& Hypersurface::reduced_monomial(const Monomial& m, int k) const {
  Key key{k, m};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  GeoPoly mono = GeoPoly::monomial(coordinates(), m, RatFunc(1));
  FormClass result;
  if (k == 1) {
    result = FormClass(mono, 1);
  } else {
    ReductionStep step = reduce_pole_order(FormClass(mono, k));
    if (!step.remainder.is_zero()) result = FormClass(step.remainder, k);
    result += reduce(FormClass(step.output.numerator(k - 1), k - 1));
  }
  return memo_.emplace(key, std::move(result)).first->second;
}

FormClass Hypersurface::reduce(const FormClass& f) const {
  check_homogeneous(f);
  FormClass out;
  for (const auto& [k, p] : f.parts)
    for (const auto& [m, c] : p.terms()) out += reduced_monomial(m, k).scale(c);
  return out;
}

std::vector<Rational> specialize(const std::vector<RatFunc>& v, const std::vector<Rational>& point) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.is_zero() ? Rational(0) : x.evaluate(point));
  return out;
}

std::vector<Rational> sample_point(size_t n, int attempt) {
  static const int kNum[] = {13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  static const int kDen[] = {7, 11, 5, 3, 13, 9, 17, 19};
  std::vector<Rational> p;
  for (size_t i = 0; i < n; ++i) {
    Rational x(kNum[(i + static_cast<size_t>(attempt) * 3) % 10], kDen[(i * 3 + static_cast<size_t>(attempt)) % 8]);
    x.canonicalize();
    p.push_back(x + attempt);
  }
  return p;
}

ClassSpace::ClassSpace(const Hypersurface& h, int max_order) : h_(h), max_order_(max_order) {
  const int n = h.ambient_count();
  for (int k = max_order; k >= 1; --k) {
    int d = h.numerator_degree(k);
    if (d < 0) continue;
    for (const auto& m : h.jacobian().standard_monomials(d)) {
      index_[{k, exps(m, n)}] = columns_.size();
      columns_.emplace_back(k, m);
    }
  }
  std::vector<std::vector<RatFunc>> rows;
  if (!h.jacobian_zero_dimensional()) {
    for (int k = 1; k <= max_order; ++k) {
      int d = h.numerator_degree(k) + 1;
      if (d < 0) continue;
      for (const auto& mu : monomials_of_degree(n, d)) {
        GeoPoly pm = GeoPoly::monomial(h.coordinates(), mu, RatFunc(1));
        for (int i = 0; i < n; ++i) {
          FormClass rel((pm * h.gradient()[static_cast<size_t>(i)]).scale(RatFunc(k)), k + 1);
          GeoPoly dmu = pm.derivative(i);
          if (!dmu.is_zero()) rel -= FormClass(dmu, k);
          std::vector<RatFunc> row = coordinates(h.reduce(rel));
          ++generated_;
          if (std::any_of(row.begin(), row.end(), [](const RatFunc& x) { return !x.is_zero(); })) rows.push_back(std::move(row));
        }
      }
    }
  }
  eliminate(std::move(rows));
}

void ClassSpace::eliminate(std::vector<std::vector<RatFunc>> rows) {
  const size_t ncols = columns_.size();
  std::vector<size_t> selected;
  if (!rows.empty()) {
    const size_t np = h_.params() ? static_cast<size_t>(h_.params()->size()) : 0;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 20) throw ComputationError("no regular specialization point found");
      std::vector<Rational> pt = sample_point(np, attempt);
      try {
        selected.clear();
        std::vector<std::pair<size_t, std::vector<Rational>>> ech;
        for (size_t r = 0; r < rows.size() && ech.size() < ncols; ++r) {
          std::vector<Rational> v = specialize(rows[r], pt);
          for (const auto& [p, row] : ech) {
            if (sgn(v[p]) == 0) continue;
            Rational f = v[p];
            for (size_t j = 0; j < ncols; ++j)
              if (sgn(row[j]) != 0) v[j] -= f * row[j];
          }
          size_t p = 0;
          while (p < ncols && sgn(v[p]) == 0) ++p;
          if (p == ncols) continue;
          Rational inv = 1 / v[p];
          for (auto& x : v) x *= inv;
          ech.emplace_back(p, std::move(v));
          selected.push_back(r);
        }
        break;
      } catch (const ComputationError&) {
        continue;
      }
    }
  }
  for (;;) {
    Matrix<RatFunc> sel;
    for (size_t r : selected) sel.push_back(rows[r]);
    echelon_ = rref(sel);
    std::vector<bool> pivot(ncols, false);
    for (size_t p : echelon_.pivots) pivot[p] = true;
    free_.clear();
    for (size_t j = 0; j < ncols; ++j)
      if (!pivot[j]) free_.push_back(j);
    // Exact check of the rows the specialization did not select.
    std::vector<bool> used(rows.size(), false);
    for (size_t r : selected) used[r] = true;
    bool promoted = false;
    for (size_t r = 0; r < rows.size() && !promoted; ++r) {
      if (used[r]) continue;
      for (size_t f : free_) {
        RatFunc x = rows[r][f];
        for (size_t i = 0; i < echelon_.pivots.size(); ++i) {
          const RatFunc& a = rows[r][echelon_.pivots[i]];
          if (!a.is_zero() && !echelon_.rows[i][f].is_zero()) x -= a * echelon_.rows[i][f];
        }
        if (!x.is_zero()) {
          selected.push_back(r);
          promoted = true;
          break;
        }
      }
    }
    if (!promoted) break;
  }
}

std::vector<std::pair<int, Monomial>> ClassSpace::basis() const {
  std::vector<std::pair<int, Monomial>> out;
  for (size_t j : free_) out.push_back(columns_[j]);
  return out;
}

std::vector<RatFunc> ClassSpace::coordinates(const FormClass& reduced) const {
  const int n = h_.ambient_count();
  std::vector<RatFunc> v(columns_.size());
  for (const auto& [k, p] : reduced.parts) {
    if (k > max_order_) throw ComputationError("class has pole order " + std::to_string(k) + " above the bound " + std::to_string(max_order_));
    for (const auto& [m, c] : p.terms()) {
      auto it = index_.find({k, exps(m, n)});
      if (it == index_.end())
        throw ComputationError("stuck reduction: residual monomial " + monomial_to_string(m, *h_.coordinates()) +
                               " at pole order " + std::to_string(k));
      v[it->second] = c;
    }
  }
  return v;
}

std::vector<RatFunc> ClassSpace::project(const FormClass& f) const {
  std::vector<RatFunc> v = coordinates(h_.reduce(f));
  std::vector<RatFunc> q;
  q.reserve(free_.size());
  for (size_t f2 : free_) {
    RatFunc x = v[f2];
    for (size_t i = 0; i < echelon_.pivots.size(); ++i) {
      const RatFunc& a = v[echelon_.pivots[i]];
      if (!a.is_zero() && !echelon_.rows[i][f2].is_zero()) x -= a * echelon_.rows[i][f2];
    }
    q.push_back(std::move(x));
  }
  return q;
}

namespace {

void indices_up_to(int nvars, int max_total, std::vector<MultiIndex>& out) {
  std::vector<MultiIndex> all;
  MultiIndex cur(static_cast<size_t>(nvars), 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == nvars) {
      all.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[static_cast<size_t>(pos)] = e;
      self(self, pos + 1, left - e);
    }
    cur[static_cast<size_t>(pos)] = 0;
  };
  rec(rec, 0, max_total);
  std::sort(all.begin(), all.end(), MultiIndexLess());
  out = std::move(all);
}

}  // namespace

DerivativeTable derivative_table(const Hypersurface& h, int max_total_order) {
  DerivativeTable t;
  const int m = h.params() ? h.params()->size() : 0;
  ClassSpace space(h, max_total_order + 1);
  t.space_dimension = space.dimension();
  t.relation_rank = space.relation_rank();
  indices_up_to(m, max_total_order, t.indices);
  std::map<MultiIndex, FormClass> classes;
  for (const auto& a : t.indices) {
    FormClass c;
    int i = 0;
    while (i < m && a[static_cast<size_t>(i)] == 0) ++i;
    if (i == m) {
      c = h.period();
    } else {
      MultiIndex prev = a;
      --prev[static_cast<size_t>(i)];
      c = h.reduce(h.differentiate(classes.at(prev), h.params()->name(i)));
    }
    t.vectors.push_back(space.project(c));
    classes.emplace(a, std::move(c));
  }
  return t;
}

PicardFuchsSystem picard_fuchs_system(const Hypersurface& h, int max_total_order) {
  PicardFuchsSystem sys;
  sys.params = h.params();
  if (!h.params() || h.params()->size() == 0) return sys;
  DerivativeTable t = derivative_table(h, max_total_order);
  Matrix<RatFunc> m = transpose(t.vectors);
  if (m.empty()) m.assign(0, {});
  Matrix<RatFunc> null = m.empty() ? Matrix<RatFunc>() : nullspace(m, t.indices.size());
  if (m.empty()) {
    for (size_t j = 0; j < t.indices.size(); ++j) {
      std::vector<RatFunc> e(t.indices.size());
      e[j] = RatFunc(1);
      null.push_back(e);
    }
  }
  for (const auto& v : null) {
    DiffOperator::Terms terms;
    for (size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) terms[t.indices[j]] = v[j];
    sys.equations.push_back(DiffOperator(h.params(), terms).normalized());
  }
  return sys;
}

bool annihilates_period(const DerivativeTable& table, const DiffOperator& op) {
  std::vector<RatFunc> acc(table.space_dimension);
  for (const auto& [a, c] : op.terms()) {
    auto it = std::find(table.indices.begin(), table.indices.end(), a);
    if (it == table.indices.end()) throw StructuralError("operator order exceeds the derivative table");
    const auto& v = table.vectors[static_cast<size_t>(it - table.indices.begin())];
    for (size_t i = 0; i < acc.size(); ++i)
      if (!v[i].is_zero()) acc[i] += c * v[i];
  }
  return std::all_of(acc.begin(), acc.end(), [](const RatFunc& x) { return x.is_zero(); });
}

LinearODE picard_fuchs_ode(const Hypersurface& h, int max_order) {
  if (!h.params() || h.params()->size() != 1) throw StructuralError("picard_fuchs_ode needs exactly one parameter");
  const std::string t = h.params()->name(0);
  ClassSpace space(h, max_order + 1);
  std::vector<std::vector<RatFunc>> vs;
  FormClass c = h.period();
  for (int m = 0; m <= max_order; ++m) {
    if (m > 0) c = h.reduce(h.differentiate(c, t));
    vs.push_back(space.project(c));
    Matrix<RatFunc> mat = transpose(vs);
    Matrix<RatFunc> null;
    if (mat.empty()) {
      null.push_back(std::vector<RatFunc>(vs.size()));
      null.back().back() = RatFunc(1);
    } else {
      null = nullspace(mat, vs.size());
    }
    if (!null.empty()) {
      LinearODE ode;
      ode.ring = h.params();
      ode.var = t;
      ode.coefficients = null.front();
      return ode.normalize();
    }
  }
  throw ComputationError("order exceeds bound: no relation among derivatives up to order " + std::to_string(max_order));
}

GeoPoly geometric_polynomial(const RatFunc& f, const VarsPtr& coords, const VarsPtr& params) {
  VarsPtr src = f.vars();
  std::vector<int> to_coord;
  std::vector<int> to_param;
  if (src) {
    for (int i = 0; i < src->size(); ++i) {
      const std::string& n = src->name(i);
      to_coord.push_back(coords->index(n));
      to_param.push_back(params ? params->index(n) : -1);
      if (to_coord.back() < 0 && to_param.back() < 0) throw StructuralError("variable '" + n + "' is neither a coordinate nor a parameter");
    }
  }
  for (const auto& [m, c] : f.den().terms())
    for (size_t i = 0; i < to_coord.size(); ++i)
      if (m[static_cast<int>(i)] && to_coord[i] >= 0) throw StructuralError("denominator involves a coordinate");
  auto remap = [&](const Monomial& m, bool coord) {
    Monomial r;
    for (size_t i = 0; i < to_coord.size(); ++i) {
      int t = coord ? to_coord[i] : to_param[i];
      if (t < 0 || !m[static_cast<int>(i)]) continue;
      r.e[static_cast<size_t>(t)] = static_cast<uint16_t>(m[static_cast<int>(i)]);
      r.deg += m[static_cast<int>(i)];
    }
    return r;
  };
  Poly den(params);
  for (const auto& [m, c] : f.den().terms()) den += Poly::monomial(params, remap(m, false), c);
  std::map<std::vector<uint16_t>, std::pair<Monomial, Poly>> buckets;
  for (const auto& [m, c] : f.num().terms()) {
    Monomial cm = remap(m, true);
    auto key = exps(cm, kMaxVars);
    auto it = buckets.try_emplace(key, cm, Poly(params)).first;
    it->second.second += Poly::monomial(params, remap(m, false), c);
  }
  std::vector<GeoPoly::Term> terms;
  for (auto& [k, mc] : buckets) terms.emplace_back(mc.first, RatFunc(mc.second, den));
  return GeoPoly(coords, std::move(terms));
}

}  // namespace pfk3
