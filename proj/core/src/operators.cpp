#include "pfk3/operators.hpp"

#include <algorithm>
#include <sstream>

namespace pfk3 {

namespace {

RatFunc diff_named(const RatFunc& f, const std::string& name) {
  VarsPtr v = f.vars();
  if (!v || v->index(name) < 0) return RatFunc();
  return f.derivative(name);
}

Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

int total(const MultiIndex& a) {
  int s = 0;
  for (int x : a) s += x;
  return s;
}

// All gamma <= alpha componentwise.
void sub_indices(const MultiIndex& alpha, size_t pos, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos == alpha.size()) {
    out.push_back(cur);
    return;
  }
  for (int g = 0; g <= alpha[pos]; ++g) {
    cur[pos] = g;
    sub_indices(alpha, pos + 1, cur, out);
  }
}

std::string term_factor(const RatFunc& c, bool first, bool& negative) {
  // Returns the coefficient text without sign; sets negative.
  RatFunc a = c;
  negative = false;
  if (a.is_constant() && sgn(a.constant_value()) < 0) {
    negative = true;
    a = -a;
  } else if (!a.is_constant() && a.num().size() == 1 && sgn(a.num().lead_coeff()) < 0) {
    negative = true;
    a = -a;
  }
  (void)first;
  std::string s = a.to_string();
  if (s.find_first_of("+-", 1) != std::string::npos && s.front() != '(') s = "(" + s + ")";
  return s;
}

}  // namespace

bool MultiIndexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  int ta = total(a);
  int tb = total(b);
  if (ta != tb) return ta < tb;
  return a < b;
}

DiffOperator::DiffOperator(VarsPtr vars, Terms terms) : vars_(std::move(vars)), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (static_cast<int>(it->first.size()) != nvars()) throw StructuralError("multi-index length differs from variable count");
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
}

DiffOperator DiffOperator::identity(const VarsPtr& vars) { return multiplication(vars, RatFunc(1)); }

DiffOperator DiffOperator::multiplication(const VarsPtr& vars, const RatFunc& c) {
  DiffOperator d(vars);
  if (!c.is_zero()) d.terms_[MultiIndex(static_cast<size_t>(d.nvars()), 0)] = c;
  return d;
}

DiffOperator DiffOperator::partial(const VarsPtr& vars, int i, int power) {
  DiffOperator d(vars);
  if (i < 0 || i >= d.nvars()) throw StructuralError("partial: variable index out of range");
  MultiIndex a(static_cast<size_t>(d.nvars()), 0);
  a[static_cast<size_t>(i)] = power;
  d.terms_[a] = RatFunc(1);
  return d;
}

DiffOperator DiffOperator::partial(const VarsPtr& vars, std::string_view name, int power) {
  int i = vars ? vars->index(name) : -1;
  if (i < 0) throw StructuralError("unknown variable '" + std::string(name) + "'");
  return partial(vars, i, power);
}

int DiffOperator::order() const { return terms_.empty() ? -1 : total(terms_.rbegin()->first); }

RatFunc DiffOperator::coeff(const MultiIndex& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? RatFunc() : it->second;
}

const MultiIndex& DiffOperator::leading_index() const {
  if (terms_.empty()) throw StructuralError("zero operator has no leading term");
  return terms_.rbegin()->first;
}

DiffOperator DiffOperator::operator-() const {
  DiffOperator r = *this;
  for (auto& [a, c] : r.terms_) c = -c;
  return r;
}

DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
  DiffOperator r(a.vars_ ? a.vars_ : b.vars_);
  if (a.vars_ && b.vars_ && !same_vars(a.vars_, b.vars_)) throw StructuralError("operators over different variables");
  r.terms_ = a.terms_;
  for (const auto& [k, c] : b.terms_) {
    RatFunc s = r.coeff(k) + c;
    if (s.is_zero())
      r.terms_.erase(k);
    else
      r.terms_[k] = s;
  }
  return r;
}

DiffOperator operator-(const DiffOperator& a, const DiffOperator& b) { return a + (-b); }

DiffOperator operator*(const DiffOperator& a, const DiffOperator& b) {
  if (a.vars_ && b.vars_ && !same_vars(a.vars_, b.vars_)) throw StructuralError("operators over different variables");
  DiffOperator r(a.vars_ ? a.vars_ : b.vars_);
  for (const auto& [alpha, c] : a.terms_) {
    std::vector<MultiIndex> gammas;
    MultiIndex cur(alpha.size(), 0);
    sub_indices(alpha, 0, cur, gammas);
    for (const auto& [beta, e] : b.terms_) {
      for (const auto& gamma : gammas) {
        RatFunc de = partial_derivative(e, r.vars_, gamma);
        if (de.is_zero()) continue;
        Integer w(1);
        MultiIndex out(alpha.size());
        for (size_t i = 0; i < alpha.size(); ++i) {
          w *= binomial(alpha[i], gamma[i]);
          out[i] = alpha[i] - gamma[i] + beta[i];
        }
        RatFunc term = c * de * RatFunc(Rational(w));
        RatFunc s = r.coeff(out) + term;
        if (s.is_zero())
          r.terms_.erase(out);
        else
          r.terms_[out] = s;
      }
    }
  }
  return r;
}

bool operator==(const DiffOperator& a, const DiffOperator& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  for (; i != a.terms_.end(); ++i, ++j)
    if (i->first != j->first || i->second != j->second) return false;
  return true;
}

DiffOperator DiffOperator::scale(const RatFunc& c) const {
  DiffOperator r(vars_);
  if (c.is_zero()) return r;
  for (const auto& [a, x] : terms_) r.terms_[a] = x * c;
  return r;
}

RatFunc partial_derivative(const RatFunc& f, const VarsPtr& vars, const MultiIndex& a) {
  RatFunc r = f;
  for (size_t i = 0; i < a.size(); ++i)
    for (int k = 0; k < a[i] && !r.is_zero(); ++k) r = diff_named(r, vars->name(static_cast<int>(i)));
  return r;
}

RatFunc DiffOperator::apply(const RatFunc& f) const {
  RatFunc out;
  for (const auto& [a, c] : terms_) out += c * partial_derivative(f, vars_, a);
  return out;
}

DiffOperator DiffOperator::normalized() const {
  if (terms_.empty()) return *this;
  std::vector<RatFunc> cs;
  std::vector<MultiIndex> keys;
  RatFunc lead = terms_.rbegin()->second;
  for (const auto& [a, c] : terms_) {
    keys.push_back(a);
    cs.push_back(c / lead);
  }
  cs = normalize_coefficients(cs);
  DiffOperator r(vars_);
  for (size_t i = 0; i < keys.size(); ++i) r.terms_[keys[i]] = cs[i];
  return r;
}

std::string DiffOperator::to_string(const std::string& fn) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [a, c] = *it;
    bool neg = false;
    std::string cs = term_factor(c, first, neg);
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    std::string d;
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      if (!d.empty()) d += "*";
      d += "D" + vars_->name(static_cast<int>(i));
      if (a[i] > 1) d += "^" + std::to_string(a[i]);
    }
    if (d.empty()) {
      os << (cs == "1" ? "" : cs + "*") << fn;
    } else {
      if (cs != "1") os << cs << "*";
      os << d << " " << fn;
    }
    first = false;
  }
  return os.str();
}

std::string DiffOperator::to_latex(const std::string& fn) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [a, c] = *it;
    bool neg = false;
    std::string cs = term_factor(c, first, neg);
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    if (cs != "1") os << cs << " ";
    os << fn;
    if (total(a) > 0) {
      os << "^{(";
      for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
      os << ")}";
    }
    first = false;
  }
  return os.str();
}

Poly denominator_lcm(const std::vector<RatFunc>& c) {
  Poly l = Poly::constant(nullptr, Rational(1));
  for (const auto& x : c) {
    if (x.is_zero() || x.den().is_constant()) continue;
    Poly g = poly_gcd(l, x.den());
    l = l * x.den().exact_div(g);
  }
  return l;
}

std::vector<RatFunc> normalize_coefficients(const std::vector<RatFunc>& c) {
  Poly l = denominator_lcm(c);
  std::vector<Poly> p;
  p.reserve(c.size());
  for (const auto& x : c) p.push_back(x.is_zero() ? Poly() : x.num() * l.exact_div(x.den()));
  Poly g;
  for (const auto& x : p) g = g.is_zero() ? x : (x.is_zero() ? g : poly_gcd(g, x));
  if (g.is_zero()) return c;
  for (auto& x : p)
    if (!x.is_zero()) x = x.exact_div(g);
  Integer num_gcd(0);
  Integer den_lcm(1);
  for (const auto& x : p)
    for (const auto& t : x.terms()) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.second.get_num_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.second.get_den_mpz_t());
    }
  Rational content(num_gcd, den_lcm);
  content.canonicalize();
  size_t top = p.size();
  while (top > 0 && p[top - 1].is_zero()) --top;
  if (top > 0 && sgn(p[top - 1].lead_coeff()) < 0) content = -content;
  std::vector<RatFunc> out;
  out.reserve(p.size());
  for (const auto& x : p) out.emplace_back(x.scale(Rational(1) / content));
  return out;
}

LinearODE LinearODE::normalize() const {
  LinearODE r = *this;
  r.coefficients = normalize_coefficients(coefficients);
  r.normalized = true;
  return r;
}

std::vector<RatFunc> LinearODE::monic() const {
  std::vector<RatFunc> out;
  for (const auto& c : coefficients) out.push_back(c / leading());
  return out;
}

RatFunc LinearODE::apply(const RatFunc& f) const {
  RatFunc d = f;
  RatFunc out;
  for (size_t i = 0; i < coefficients.size(); ++i) {
    out += coefficients[i] * d;
    if (i + 1 < coefficients.size()) d = diff_named(d, var);
  }
  return out;
}

DiffOperator LinearODE::as_operator() const {
  VarsPtr v = make_vars({var});
  DiffOperator::Terms t;
  for (size_t i = 0; i < coefficients.size(); ++i)
    if (!coefficients[i].is_zero()) t[MultiIndex{static_cast<int>(i)}] = coefficients[i];
  return DiffOperator(v, t);
}

std::string LinearODE::to_string(const std::string& fn) const {
  std::ostringstream os;
  bool first = true;
  for (int i = order(); i >= 0; --i) {
    const RatFunc& c = coefficients[static_cast<size_t>(i)];
    if (c.is_zero()) continue;
    bool neg = false;
    std::string cs = term_factor(c, first, neg);
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    if (cs != "1") os << cs << "*";
    os << fn;
    if (i <= 3)
      os << std::string(static_cast<size_t>(i), '\'');
    else
      os << "^(" << i << ")";
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::string LinearODE::to_latex(const std::string& fn) const {
  std::ostringstream os;
  bool first = true;
  for (int i = order(); i >= 0; --i) {
    const RatFunc& c = coefficients[static_cast<size_t>(i)];
    if (c.is_zero()) continue;
    bool neg = false;
    std::string cs = term_factor(c, first, neg);
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    if (cs != "1") os << cs << " ";
    os << fn;
    if (i > 0) os << "^{(" << i << ")}";
    os << "(" << var << ")";
    first = false;
  }
  if (first) os << "0";
  os << " = 0";
  return os.str();
}

bool same_up_to_factor(const LinearODE& a, const LinearODE& b) {
  if (a.order() != b.order()) return false;
  auto x = normalize_coefficients(a.coefficients);
  auto y = normalize_coefficients(b.coefficients);
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) return false;
  return true;
}

}  // namespace pfk3
