#include "pfk3/random.hpp"

namespace pfk3 {

long RandomSource::integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

Rational RandomSource::rational(long bound) {
  Rational r(integer(-bound, bound), integer(1, bound));
  r.canonicalize();
  return r;
}

Rational RandomSource::nonzero_rational(long bound) {
  Rational r;
  while (sgn(r = rational(bound)) == 0) {
  }
  return r;
}

Cyclo3 RandomSource::cyclo(long bound) { return Cyclo3(rational(bound), rational(bound)); }

namespace {

template <class K, class Gen>
Polynomial<K> random_poly(std::mt19937_64& rng, const VarsPtr& vars, int max_deg, int terms, Gen coeff) {
  std::vector<typename Polynomial<K>::Term> ts;
  int n = vars->size();
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    int budget = std::uniform_int_distribution<int>(0, max_deg)(rng);
    for (int i = 0; i < n && budget > 0; ++i) {
      int e = i + 1 == n ? budget : std::uniform_int_distribution<int>(0, budget)(rng);
      m = m * Monomial::var(i, static_cast<unsigned>(e));
      budget -= e;
    }
    ts.emplace_back(m, coeff());
  }
  return Polynomial<K>(vars, std::move(ts));
}

}  // namespace

Poly RandomSource::poly(const VarsPtr& vars, int max_deg, int terms, long bound) {
  return random_poly<Rational>(rng_, vars, max_deg, terms, [&] { return rational(bound); });
}

Poly RandomSource::nonzero_poly(const VarsPtr& vars, int max_deg, int terms, long bound) {
  Poly p;
  while ((p = poly(vars, max_deg, terms, bound)).is_zero()) {
  }
  return p;
}

Polynomial<Cyclo3> RandomSource::cyclo_poly(const VarsPtr& vars, int max_deg, int terms, long bound) {
  return random_poly<Cyclo3>(rng_, vars, max_deg, terms, [&] { return cyclo(bound); });
}

RatFunc RandomSource::ratfunc(const VarsPtr& vars, int max_deg, int terms, long bound) {
  return RatFunc(poly(vars, max_deg, terms, bound), nonzero_poly(vars, max_deg, terms, bound));
}

RatFunc RandomSource::nonzero_ratfunc(const VarsPtr& vars, int max_deg, int terms, long bound) {
  return RatFunc(nonzero_poly(vars, max_deg, terms, bound), nonzero_poly(vars, max_deg, terms, bound));
}

RatFunc RandomSource::nonconstant_ratfunc(const VarsPtr& ring, int max_deg, long bound) {
  while (true) {
    RatFunc f = nonzero_ratfunc(ring, max_deg, max_deg + 1, bound);
    if (!f.is_constant()) return f;
  }
}

}  // namespace pfk3
