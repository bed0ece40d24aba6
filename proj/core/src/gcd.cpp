#include "pfk3/gcd.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>

namespace pfk3 {
namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}
u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

u64 zmod(const Integer& z, u64 p) {
  mpz_class m = z % mpz_class(static_cast<unsigned long>(p));
  if (m < 0) m += static_cast<unsigned long>(p);
  return m.get_ui();
}

bool qmod(const Rational& q, u64 p, u64& out) {
  u64 d = zmod(q.get_den(), p);
  if (d == 0) return false;
  out = mulmod(zmod(q.get_num(), p), invmod(d, p), p);
  return true;
}

/// Primes just below 2^62, shared read-only after first use.
const std::vector<u64>& prime_list() {
  static const std::vector<u64> primes = [] {
    std::vector<u64> out;
    mpz_class c = (mpz_class(1) << 62) - 1;
    while (out.size() < 400) {
      if (mpz_probab_prime_p(c.get_mpz_t(), 30)) out.push_back(c.get_ui());
      c -= 2;
    }
    return out;
  }();
  return primes;
}

using DenseP = std::vector<u64>;

void trim(DenseP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

DenseP gcd_mod(DenseP a, DenseP b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a <- a mod b
    u64 inv = invmod(b.back(), p);
    while (a.size() >= b.size()) {
      u64 f = mulmod(a.back(), inv, p);
      size_t shift = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) {
        u64 t = mulmod(f, b[i], p);
        a[shift + i] = a[shift + i] >= t ? a[shift + i] - t : a[shift + i] + p - t;
      }
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    u64 inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
  }
  return a;
}

void trim(DenseZ& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

Integer content_z(const DenseZ& a) {
  Integer g = 0;
  for (const auto& c : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

/// Exact division test over Z: does h divide a?
bool divides_z(const DenseZ& h, DenseZ a) {
  trim(a);
  if (h.empty()) return a.empty();
  const Integer& lc = h.back();
  while (a.size() >= h.size()) {
    if (!mpz_divisible_p(a.back().get_mpz_t(), lc.get_mpz_t())) return false;
    Integer f = a.back() / lc;
    size_t shift = a.size() - h.size();
    for (size_t i = 0; i < h.size(); ++i) a[shift + i] -= f * h[i];
    trim(a);
  }
  return a.empty();
}

Integer symmetric(const Integer& x, const Integer& m) {
  Integer r = x % m;
  if (r < 0) r += m;
  if (r > m / 2) r -= m;
  return r;
}

// ---------------------------------------------------------------------------------
// Multivariate layer: polynomials viewed in one main variable.

using VPoly = std::vector<Poly>;  // coefficients low -> high, main variable removed

VPoly split(const Poly& p, int v) {
  auto coeffs = p.coefficients_in(v);
  VPoly out;
  if (coeffs.empty()) return out;
  out.assign(coeffs.rbegin()->first + 1, Poly(p.vars()));
  for (auto& [e, c] : coeffs) out[e] = c;
  return out;
}

Poly join(const VPoly& a, int v, const VarsPtr& vars) {
  Poly r(vars);
  for (size_t e = 0; e < a.size(); ++e)
    if (!a[e].is_zero()) r += a[e].mul_term(Monomial::var(v, static_cast<unsigned>(e)), Rational(1));
  return r;
}

void trim(VPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Poly gcd_rec(const Poly& a, const Poly& b);

Poly content_of(const VPoly& a) {
  Poly g;
  bool first = true;
  for (const auto& c : a) {
    if (c.is_zero()) continue;
    g = first ? c : gcd_rec(g, c);
    first = false;
    if (g.is_constant()) return Poly::constant(c.vars(), Rational(1));
  }
  return g;
}

VPoly div_all(const VPoly& a, const Poly& c) {
  VPoly out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(x.is_zero() ? x : x.exact_div(c));
  return out;
}

VPoly prem(const VPoly& a, const VPoly& b) {
  VPoly r = a;
  trim(r);
  const Poly& lcb = b.back();
  size_t db = b.size() - 1;
  int e = static_cast<int>(a.size()) - static_cast<int>(b.size()) + 1;
  while (!r.empty() && r.size() - 1 >= db) {
    Poly lcr = r.back();
    size_t shift = r.size() - 1 - db;
    for (auto& x : r) x = x * lcb;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= lcr * b[i];
    trim(r);
    --e;
  }
  if (e > 0) {
    Poly f = lcb.pow(static_cast<unsigned>(e));
    for (auto& x : r) x = x * f;
  }
  return r;
}

/// Sound coprimality test: an image with preserved leading coefficients and trivial gcd
/// proves the primitive inputs are coprime.
bool coprime_image(const VPoly& a, const VPoly& b, int v, const VarsPtr& vars, int attempt) {
  const u64 p = prime_list()[static_cast<size_t>(attempt)];
  int n = vars->size();
  std::vector<u64> point(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    point[static_cast<size_t>(i)] = (static_cast<u64>(i + 3) * 1000003ULL + static_cast<u64>(attempt) * 7919ULL + 17) % p;
  auto eval = [&](const Poly& q, u64& out) {
    u64 acc = 0;
    for (const auto& [m, c] : q.terms()) {
      u64 cm = 0;
      if (!qmod(c, p, cm)) return false;
      for (int i = 0; i < n; ++i)
        if (i != v && m[i]) cm = mulmod(cm, powmod(point[static_cast<size_t>(i)], m[i], p), p);
      acc = (acc + cm) % p;
    }
    out = acc;
    return true;
  };
  auto image = [&](const VPoly& x, DenseP& out) {
    out.resize(x.size());
    for (size_t i = 0; i < x.size(); ++i)
      if (!eval(x[i], out[i])) return false;
    return !out.empty() && out.back() != 0;
  };
  DenseP ia;
  DenseP ib;
  if (!image(a, ia) || !image(b, ib)) return false;
  return gcd_mod(ia, ib, p).size() == 1;
}

Poly gcd_univariate(const Poly& a, const Poly& b, int v) {
  auto to_dense = [&](const Poly& p) {
    Rational c = rational_content(p);
    Poly q = p.scale(Rational(1) / c);
    DenseZ out(static_cast<size_t>(q.degree_in(v) + 1));
    for (const auto& [m, x] : q.terms()) out[m[v]] = x.get_num();
    return out;
  };
  DenseZ g = dense_gcd_z(to_dense(a), to_dense(b));
  VarsPtr vars = unify_vars(a.vars(), b.vars());
  std::vector<Poly::Term> ts;
  for (size_t e = 0; e < g.size(); ++e)
    if (sgn(g[e]) != 0) ts.emplace_back(Monomial::var(v, static_cast<unsigned>(e)), Rational(g[e]));
  return Poly(vars, std::move(ts));
}

Monomial min_exponents(const Poly& p) {
  Monomial m = p.terms().front().first;
  for (const auto& t : p.terms()) m = Monomial::gcd(m, t.first);
  return m;
}

Poly gcd_rec(const Poly& a, const Poly& b) {
  VarsPtr vars = unify_vars(a.vars(), b.vars());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() || b.is_constant()) return Poly::constant(vars, Rational(1));

  Monomial ma = min_exponents(a);
  Monomial mb = min_exponents(b);
  if (!ma.is_one() || !mb.is_one()) {
    Poly ra = ma.is_one() ? a : a.exact_div(Poly::monomial(vars, ma, Rational(1)));
    Poly rb = mb.is_one() ? b : b.exact_div(Poly::monomial(vars, mb, Rational(1)));
    Monomial mg = Monomial::gcd(ma, mb);
    Poly g = gcd_rec(ra, rb);
    return mg.is_one() ? g : g.mul_term(mg, Rational(1));
  }

  unsigned sa = a.support_mask();
  unsigned sb = b.support_mask();
  if (sa != sb) {
    unsigned only = (sa ^ sb);
    int v = __builtin_ctz(only);
    const Poly& has = (sa >> v) & 1u ? a : b;
    Poly other = (sa >> v) & 1u ? b : a;
    for (const auto& [e, c] : has.coefficients_in(v)) {
      other = gcd_rec(c, other);
      if (other.is_constant()) return Poly::constant(vars, Rational(1));
    }
    return other;
  }

  if (__builtin_popcount(sa) == 1) return gcd_univariate(a, b, __builtin_ctz(sa));

  int v = -1;
  int best = 1 << 30;
  for (int i = 0; i < kMaxVars; ++i) {
    if (!((sa >> i) & 1u)) continue;
    int d = std::max(a.degree_in(i), b.degree_in(i));
    if (d < best) {
      best = d;
      v = i;
    }
  }
  VPoly A = split(a, v);
  VPoly B = split(b, v);
  Poly ca = content_of(A);
  Poly cb = content_of(B);
  Poly c = gcd_rec(ca, cb);
  if (!ca.is_constant()) A = div_all(A, ca);
  if (!cb.is_constant()) B = div_all(B, cb);
  if (A.size() == 1 || B.size() == 1) return c;
  if (coprime_image(A, B, v, vars, 0) || coprime_image(A, B, v, vars, 1)) return c;

  if (A.size() < B.size()) std::swap(A, B);
  Poly g = Poly::constant(vars, Rational(1));
  Poly h = Poly::constant(vars, Rational(1));
  while (true) {
    int delta = static_cast<int>(A.size()) - static_cast<int>(B.size());
    VPoly R = prem(A, B);
    if (R.empty()) break;
    if (R.size() == 1) {
      B = VPoly{Poly::constant(vars, Rational(1))};
      break;
    }
    Poly divisor = g * h.pow(static_cast<unsigned>(delta));
    A = std::move(B);
    B = div_all(R, divisor);
    g = A.back();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = g.pow(static_cast<unsigned>(delta)).exact_div(h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
  Poly cB = content_of(B);
  if (!cB.is_constant()) B = div_all(B, cB);
  return c * join(B, v, vars);
}

Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scale(Rational(1) / p.lead_coeff());
}

}  // namespace

Rational rational_content(const Poly& p) {
  if (p.is_zero()) return Rational(1);
  Integer g = 0;
  Integer l = 1;
  for (const auto& [m, c] : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational r(g, l);
  r.canonicalize();
  if (sgn(p.lead_coeff()) < 0) r = -r;
  return r;
}

Poly primitive_part(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scale(Rational(1) / rational_content(p));
}

DenseZ dense_gcd_z(const DenseZ& a_in, const DenseZ& b_in) {
  DenseZ a = a_in;
  DenseZ b = b_in;
  trim(a);
  trim(b);
  if (a.empty()) return b;
  if (b.empty()) return a;
  Integer ca = content_z(a);
  Integer cb = content_z(b);
  Integer c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  for (auto& x : a) x /= ca;
  for (auto& x : b) x /= cb;
  if (a.size() == 1 || b.size() == 1) return DenseZ{c};
  Integer lcg;
  mpz_gcd(lcg.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());

  size_t dmin = std::min(a.size(), b.size());  // degree + 1 bound
  DenseZ H;
  DenseZ last;
  Integer M = 0;
  for (u64 p : prime_list()) {
    u64 la = zmod(a.back(), p);
    u64 lb = zmod(b.back(), p);
    if (la == 0 || lb == 0) continue;
    DenseP ia(a.size());
    DenseP ib(b.size());
    for (size_t i = 0; i < a.size(); ++i) ia[i] = zmod(a[i], p);
    for (size_t i = 0; i < b.size(); ++i) ib[i] = zmod(b[i], p);
    DenseP g = gcd_mod(ia, ib, p);
    if (g.size() == 1) return DenseZ{c};
    if (g.size() > dmin) continue;
    u64 s = zmod(lcg, p);
    for (auto& x : g) x = mulmod(x, s, p);
    Integer P(static_cast<unsigned long>(p));
    if (g.size() < dmin || sgn(M) == 0) {
      dmin = g.size();
      H.assign(g.size(), 0);
      for (size_t i = 0; i < g.size(); ++i) H[i] = Integer(static_cast<unsigned long>(g[i]));
      M = P;
      last.clear();
      continue;
    }
    // CRT: H mod M, g mod p.
    Integer Minv;
    Integer Mp = M % P;
    mpz_invert(Minv.get_mpz_t(), Mp.get_mpz_t(), P.get_mpz_t());
    for (size_t i = 0; i < g.size(); ++i) {
      Integer gi(static_cast<unsigned long>(g[i]));
      Integer t = ((gi - H[i]) % P) * Minv % P;
      if (t < 0) t += P;
      H[i] += M * t;
    }
    M *= P;
    DenseZ cand(H.size());
    for (size_t i = 0; i < H.size(); ++i) cand[i] = symmetric(H[i], M);
    if (cand == last) {
      Integer cc = content_z(cand);
      for (auto& x : cand) x /= cc;
      if (cand.back() < 0)
        for (auto& x : cand) x = -x;
      if (divides_z(cand, a) && divides_z(cand, b)) {
        for (auto& x : cand) x *= c;
        return cand;
      }
    }
    last = std::move(cand);
  }
  throw ComputationError("univariate gcd: prime list exhausted");
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return Poly(unify_vars(a.vars(), b.vars()));
  return monic(gcd_rec(a, b));
}

std::vector<SquarefreeFactor> squarefree_decomposition(const Poly& p, Rational* unit) {
  std::vector<SquarefreeFactor> out;
  if (p.is_zero()) throw ComputationError("squarefree decomposition of zero");
  if (unit) *unit = p.lead_coeff();
  if (p.is_constant()) return out;
  unsigned mask = p.support_mask();
  if (__builtin_popcount(mask) != 1) throw StructuralError("squarefree decomposition needs a univariate polynomial");
  int v = __builtin_ctz(mask);
  Poly f = monic(p);
  Poly fp = f.derivative(v);
  Poly a0 = poly_gcd(f, fp);
  Poly b = f.exact_div(a0);
  Poly c = fp.exact_div(a0);
  Poly d = c - b.derivative(v);
  int i = 1;
  while (!b.is_constant()) {
    Poly a = poly_gcd(b, d);
    if (!a.is_constant()) out.push_back({a, i});
    b = b.exact_div(a);
    c = d.exact_div(a);
    d = c - b.derivative(v);
    ++i;
  }
  return out;
}

std::optional<Poly> poly_sqrt(const Poly& p) {
  if (p.is_zero()) return p;
  Rational unit;
  auto parts = squarefree_decomposition(p, &unit);
  if (sgn(unit) < 0) return std::nullopt;
  Integer n = unit.get_num();
  Integer d = unit.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  Integer rn;
  Integer rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Poly root = Poly::constant(p.vars(), Rational(rn, rd));
  for (const auto& [f, m] : parts) {
    if (m % 2) return std::nullopt;
    root *= f.pow(static_cast<unsigned>(m / 2));
  }
  return root;
}

}  // namespace pfk3
