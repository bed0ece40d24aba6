#pragma once

#include <string>
#include <vector>

#include "pfk3/operators.hpp"
#include "pfk3/ratfunc.hpp"

namespace pfk3 {

/// f(g) for f in a one-variable ring; the result lives in g's ring.
RatFunc compose(const RatFunc& f, const RatFunc& g);

/// {j, t} = (2 j' j''' - 3 j''^2) / (2 j'^2).
RatFunc schwarzian(const RatFunc& j, std::string_view t);

/// h'^2 Q(h) + {h, t}/2 for a Q-value given in a one-variable ring.
RatFunc qvalue_transport(const RatFunc& h, const RatFunc& q_value, std::string_view t);

/// The Q-value of j normalized by j(i) = 1: (36 j^2 - 41 j + 32) / (144 (j-1)^2 j^2).
RatFunc j_qvalue(const VarsPtr& ring);

/// Box(j) = j'^2 (36 j^2 - 41 j + 32)/(144 (j-1)^2 j^2) + {j, t}/2.
RatFunc box(const RatFunc& j, std::string_view t);

/// p2 = a0 - a1^2/4 - a1'/2 of the monic form f'' + a1 f' + a0 f.
RatFunc projective_normal_form(const LinearODE& ode);

/// Fourth-order operator annihilating f*g for f'' + p2 f = 0 and g'' + q2 g = 0; p2 != q2.
LinearODE tensor_product_4(const RatFunc& p2, const RatFunc& q2, const VarsPtr& ring);

bool fano_check(const RatFunc& p2, const RatFunc& q2);

/// Truncated power series sum c[i] (t - t0)^i.
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(std::vector<Rational> c) : c_(std::move(c)) {}
  /// Expansion of f around t0 to the given number of terms.
  static PowerSeries expand(const RatFunc& f, const Rational& t0, size_t terms);

  size_t size() const { return c_.size(); }
  const Rational& operator[](size_t i) const { return c_[i]; }
  const std::vector<Rational>& coefficients() const { return c_; }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  PowerSeries derivative() const;
  /// Index of the first nonzero coefficient; size() if none.
  size_t valuation() const;

 private:
  std::vector<Rational> c_;
};

/// Fundamental solutions of f'' + p f = 0 at an ordinary point t0: (1, 0) and (0, 1) initial data.
std::vector<PowerSeries> second_order_solutions(const RatFunc& p, const Rational& t0, size_t terms);

/// L applied to a series; the result is exact for the first terms - order(L) coefficients.
PowerSeries apply_ode(const LinearODE& ode, const PowerSeries& f, const Rational& t0);

}  // namespace pfk3
