#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pfk3/errors.hpp"
#include "pfk3/monomial.hpp"

namespace pfk3 {

/// Per-field hooks; specialized next to each coefficient type.
template <class K>
struct CoeffOps;

/**
 * @brief Sparse multivariate polynomial over a field K.
 *
 * Terms are kept strictly decreasing in grevlex order with no zero coefficients.
 * A polynomial without a ring (null vars) is a constant usable in any ring.
 */
template <class K>
class Polynomial {
 public:
  using Coeff = K;
  using Term = std::pair<Monomial, K>;

  Polynomial() = default;
  explicit Polynomial(VarsPtr vars) : vars_(std::move(vars)) {}
  Polynomial(VarsPtr vars, std::vector<Term> terms) : vars_(std::move(vars)), terms_(std::move(terms)) {
    canonicalize();
  }

  static Polynomial constant(const VarsPtr& vars, const K& c) {
    Polynomial p(vars);
    if (!CoeffOps<K>::is_zero(c)) p.terms_.emplace_back(Monomial{}, c);
    return p;
  }
  static Polynomial monomial(const VarsPtr& vars, const Monomial& m, const K& c) {
    Polynomial p(vars);
    if (!CoeffOps<K>::is_zero(c)) p.terms_.emplace_back(m, c);
    return p;
  }
  static Polynomial variable(const VarsPtr& vars, std::string_view name) {
    int i = vars->index(name);
    if (i < 0) throw StructuralError("unknown variable '" + std::string(name) + "'");
    return monomial(vars, Monomial::var(i), K(1));
  }
  static Polynomial variable(const VarsPtr& vars, int i) { return monomial(vars, Monomial::var(i), K(1)); }

  const VarsPtr& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  K constant_value() const {
    if (terms_.empty()) return K(0);
    if (!is_constant()) throw StructuralError("polynomial is not constant");
    return terms_[0].second;
  }
  const Monomial& lead_monomial() const { return terms_.front().first; }
  const K& lead_coeff() const { return terms_.front().second; }
  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().first.deg); }
  int degree_in(int var) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
    return d;
  }
  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.first.deg != terms_.front().first.deg) return false;
    return true;
  }
  /// Coefficient of an exact monomial (zero if absent).
  K coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& x) { return grevlex_cmp(t.first, x) > 0; });
    if (it != terms_.end() && it->first == m) return it->second;
    return K(0);
  }
  /// Bit i set when variable i occurs.
  unsigned support_mask() const {
    unsigned mask = 0;
    for (const auto& t : terms_)
      for (int i = 0; i < kMaxVars; ++i)
        if (t.first.e[static_cast<size_t>(i)]) mask |= 1u << i;
    return mask;
  }

  /// Everything but the leading term.
  Polynomial tail() const {
    Polynomial r(vars_);
    if (terms_.size() > 1) r.terms_.assign(terms_.begin() + 1, terms_.end());
    return r;
  }

  Polynomial with_vars(const VarsPtr& v) const {
    Polynomial r = *this;
    r.vars_ = v;
    return r;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }
  Polynomial& operator+=(const Polynomial& b) { return *this = merge(*this, b, false); }
  Polynomial& operator-=(const Polynomial& b) { return *this = merge(*this, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    VarsPtr v = unify_vars(a.vars_, b.vars_);
    if (a.is_zero() || b.is_zero()) return Polynomial(v);
    if (a.size() == 1) return b.mul_term(a.terms_[0].first, a.terms_[0].second).with_vars(v);
    if (b.size() == 1) return a.mul_term(b.terms_[0].first, b.terms_[0].second).with_vars(v);
    const Polynomial& big = a.size() >= b.size() ? a : b;
    const Polynomial& small = a.size() >= b.size() ? b : a;
    std::unordered_map<Monomial, K, MonomialHash> acc;
    acc.reserve(big.size() * small.size());
    for (const auto& [ms, cs] : small.terms_) {
      for (const auto& [mb, cb] : big.terms_) {
        Monomial m = ms * mb;
        auto [it, inserted] = acc.try_emplace(m, cs * cb);
        if (!inserted) it->second += cs * cb;
      }
    }
    Polynomial r(v);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!CoeffOps<K>::is_zero(c)) r.terms_.emplace_back(m, std::move(c));
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& x, const Term& y) { return grevlex_cmp(x.first, y.first) > 0; });
    return r;
  }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  friend Polynomial operator*(const Polynomial& a, const K& c) { return a.scale(c); }
  friend Polynomial operator*(const K& c, const Polynomial& a) { return a.scale(c); }

  Polynomial scale(const K& c) const {
    if (CoeffOps<K>::is_zero(c)) return Polynomial(vars_);
    Polynomial r(vars_);
    r.terms_.reserve(terms_.size());
    for (const auto& [m, x] : terms_) {
      K y = x * c;
      if (!CoeffOps<K>::is_zero(y)) r.terms_.emplace_back(m, std::move(y));
    }
    return r;
  }

  Polynomial mul_term(const Monomial& m, const K& c) const {
    if (CoeffOps<K>::is_zero(c)) return Polynomial(vars_);
    Polynomial r(vars_);
    r.terms_.reserve(terms_.size());
    for (const auto& [mm, x] : terms_) {
      K y = x * c;
      if (!CoeffOps<K>::is_zero(y)) r.terms_.emplace_back(mm * m, std::move(y));
    }
    return r;
  }

  /// this - c*m*q, computed by a single merge.
  Polynomial sub_mul_term(const Monomial& m, const K& c, const Polynomial& q) const {
    VarsPtr v = unify_vars(vars_, q.vars_);
    Polynomial r(v);
    r.terms_.reserve(terms_.size() + q.terms_.size());
    size_t i = 0;
    size_t j = 0;
    while (i < terms_.size() || j < q.terms_.size()) {
      if (j == q.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
        continue;
      }
      Monomial mq = q.terms_[j].first * m;
      int cmp = i == terms_.size() ? -1 : grevlex_cmp(terms_[i].first, mq);
      if (cmp > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (cmp < 0) {
        r.terms_.emplace_back(mq, -(q.terms_[j].second * c));
        ++j;
      } else {
        K y = terms_[i].second - q.terms_[j].second * c;
        if (!CoeffOps<K>::is_zero(y)) r.terms_.emplace_back(mq, std::move(y));
        ++i;
        ++j;
      }
    }
    return r;
  }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(vars_, K(1));
    Polynomial base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  Polynomial derivative(int var) const {
    if (vars_ && (var < 0 || var >= vars_->size())) throw StructuralError("derivative: variable index out of range");
    Polynomial r(vars_);
    for (const auto& [m, c] : terms_) {
      unsigned e = m[var];
      if (e == 0) continue;
      Monomial mm = m;
      mm.e[static_cast<size_t>(var)] = static_cast<uint16_t>(e - 1);
      mm.deg -= 1;
      r.terms_.emplace_back(mm, c * K(static_cast<long>(e)));
    }
    // Removing a fixed factor preserves the monomial order.
    return r;
  }
  Polynomial derivative(std::string_view name) const {
    if (!vars_) return Polynomial();
    int i = vars_->index(name);
    if (i < 0) throw StructuralError("unknown variable '" + std::string(name) + "'");
    return derivative(i);
  }

  /// Division by a single divisor under grevlex; remainder has no term divisible by lt(d).
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw ComputationError("division by zero polynomial");
    VarsPtr v = unify_vars(vars_, d.vars_);
    Polynomial q(v);
    Polynomial rem(v);
    Polynomial p = with_vars(v);
    const Monomial& lm = d.lead_monomial();
    const K& lc = d.lead_coeff();
    std::vector<Term> qterms;
    std::vector<Term> rterms;
    while (!p.is_zero()) {
      const auto& [m, c] = p.terms_.front();
      if (lm.divides(m)) {
        Monomial t = m / lm;
        K f = c / lc;
        p = p.sub_mul_term(t, f, d);
        qterms.emplace_back(t, std::move(f));
      } else {
        rterms.push_back(p.terms_.front());
        p.terms_.erase(p.terms_.begin());
      }
    }
    q.terms_ = std::move(qterms);
    rem.terms_ = std::move(rterms);
    return {q, rem};
  }

  /// Throws ComputationError when d does not divide *this.
  Polynomial exact_div(const Polynomial& d) const {
    if (d.is_constant()) return scale(K(1) / d.constant_value()).with_vars(unify_vars(vars_, d.vars_));
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw ComputationError("inexact polynomial division");
    return q;
  }
  bool divisible_by(const Polynomial& d) const { return divmod(d).second.is_zero(); }

  /// Evaluate with one value per variable of this ring; R must accept K and ring ops.
  template <class R, class Lift>
  R evaluate(const std::vector<R>& values, const R& one, Lift lift) const {
    R result = one * lift(K(0));
    if (terms_.empty()) return result;
    int n = vars_ ? vars_->size() : 0;
    if (static_cast<int>(values.size()) < n) throw StructuralError("evaluate: too few values");
    std::vector<std::vector<R>> powers(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) powers[static_cast<size_t>(i)].push_back(one);
    auto power = [&](int i, unsigned e) -> const R& {
      auto& pw = powers[static_cast<size_t>(i)];
      while (pw.size() <= e) pw.push_back(pw.back() * values[static_cast<size_t>(i)]);
      return pw[e];
    };
    for (const auto& [m, c] : terms_) {
      R t = one * lift(c);
      for (int i = 0; i < n; ++i)
        if (m[i]) t = t * power(i, m[i]);
      result = result + t;
    }
    return result;
  }

  /// Coefficients as a polynomial in variable `var`: exponent -> coefficient (var removed).
  std::map<unsigned, Polynomial> coefficients_in(int var) const {
    std::map<unsigned, std::vector<Term>> buckets;
    for (const auto& [m, c] : terms_) {
      Monomial mm = m;
      unsigned e = m[var];
      mm.e[static_cast<size_t>(var)] = 0;
      mm.deg -= e;
      buckets[e].emplace_back(mm, c);
    }
    std::map<unsigned, Polynomial> out;
    for (auto& [e, ts] : buckets) out.emplace(e, Polynomial(vars_, std::move(ts)));
    return out;
  }

  template <class K2, class F>
  Polynomial<K2> map_coeffs(F f) const {
    std::vector<typename Polynomial<K2>::Term> ts;
    ts.reserve(terms_.size());
    for (const auto& [m, c] : terms_) ts.emplace_back(m, f(c));
    return Polynomial<K2>(vars_, std::move(ts));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (!a.terms_.empty()) unify_vars(a.vars_, b.vars_);
    for (size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].first == b.terms_[i].first) || !(a.terms_[i].second == b.terms_[i].second)) return false;
    return true;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string cs = CoeffOps<K>::to_string(c);
      bool compound = cs.find_first_of("+-", 1) != std::string::npos;
      bool negative = !compound && !cs.empty() && cs[0] == '-';
      if (negative) cs.erase(0, 1);
      if (!first) os << (negative ? " - " : " + ");
      else if (negative) os << "-";
      first = false;
      if (m.is_one()) {
        os << (compound ? "(" + cs + ")" : cs);
        continue;
      }
      if (cs != "1") os << (compound ? "(" + cs + ")" : cs) << "*";
      os << monomial_to_string(m, *vars_);
    }
    return os.str();
  }

 private:
  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return grevlex_cmp(x.first, y.first) > 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second += t.second;
      } else {
        if (!out.empty() && CoeffOps<K>::is_zero(out.back().second)) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && CoeffOps<K>::is_zero(out.back().second)) out.pop_back();
    terms_ = std::move(out);
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    VarsPtr v = unify_vars(a.vars_, b.vars_);
    Polynomial r(v);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0;
    size_t j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int cmp = i == a.terms_.size()   ? -1
                : j == b.terms_.size() ? 1
                                       : grevlex_cmp(a.terms_[i].first, b.terms_[j].first);
      if (cmp > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (cmp < 0) {
        r.terms_.emplace_back(b.terms_[j].first, subtract ? K(-b.terms_[j].second) : b.terms_[j].second);
        ++j;
      } else {
        K y = a.terms_[i].second;
        if (subtract) y -= b.terms_[j].second;
        else y += b.terms_[j].second;
        if (!CoeffOps<K>::is_zero(y)) r.terms_.emplace_back(a.terms_[i].first, std::move(y));
        ++i;
        ++j;
      }
    }
    return r;
  }

  VarsPtr vars_;
  std::vector<Term> terms_;
};

}  // namespace pfk3
