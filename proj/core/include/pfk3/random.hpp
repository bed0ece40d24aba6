#pragma once

#include <cstdint>
#include <random>

#include "pfk3/cyclo3.hpp"
#include "pfk3/ratfunc.hpp"

namespace pfk3 {

/// Seeded generator of small exact objects for property checks.
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi);
  /// Numerator in [-bound, bound], denominator in [1, bound].
  Rational rational(long bound = 9);
  Rational nonzero_rational(long bound = 9);
  Cyclo3 cyclo(long bound = 9);
  /// Up to `terms` terms of total degree <= max_deg with small coefficients.
  Poly poly(const VarsPtr& vars, int max_deg, int terms, long bound = 9);
  Poly nonzero_poly(const VarsPtr& vars, int max_deg, int terms, long bound = 9);
  Polynomial<Cyclo3> cyclo_poly(const VarsPtr& vars, int max_deg, int terms, long bound = 5);
  RatFunc ratfunc(const VarsPtr& vars, int max_deg, int terms, long bound = 9);
  RatFunc nonzero_ratfunc(const VarsPtr& vars, int max_deg, int terms, long bound = 9);
  /// Nonconstant in the single variable of `ring`.
  RatFunc nonconstant_ratfunc(const VarsPtr& ring, int max_deg, long bound = 9);

 private:
  std::mt19937_64 rng_;
};

}  // namespace pfk3
