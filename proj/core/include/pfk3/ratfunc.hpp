#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfk3/gcd.hpp"

namespace pfk3 {

/**
 * @brief Reduced fraction num/den of polynomials over Q.
 *
 * Canonical form: gcd(num, den) = 1 and den is an integer polynomial with content 1 and
 * positive leading coefficient. A fraction without a ring is a rational constant.
 */
class RatFunc {
 public:
  RatFunc() : den_(one()) {}
  RatFunc(long n) : num_(Poly::constant(nullptr, Rational(n))), den_(one()) {}  // NOLINT
  RatFunc(const Rational& q) : num_(Poly::constant(nullptr, q)), den_(one()) {}  // NOLINT
  RatFunc(const Poly& p);  // NOLINT(google-explicit-constructor)
  RatFunc(const Poly& num, const Poly& den);

  static RatFunc variable(const VarsPtr& vars, std::string_view name) { return RatFunc(Poly::variable(vars, name)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  VarsPtr vars() const { return unify_vars(num_.vars(), den_.vars()); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  Rational constant_value() const;

  RatFunc operator-() const;
  RatFunc inverse() const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) { return add(a, b, false); }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return add(a, b, true); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc pow(int e) const;
  RatFunc derivative(int var) const;
  RatFunc derivative(std::string_view name) const;

  /// Value at a rational point; throws ComputationError when the denominator vanishes.
  Rational evaluate(const std::vector<Rational>& point) const;
  /// Substitute one RatFunc per variable of this ring.
  RatFunc substitute(const std::vector<RatFunc>& values) const;
  /// Substitute by name; variables not in the map are kept (moved into the target ring).
  RatFunc substitute(const std::map<std::string, RatFunc>& values, const VarsPtr& target) const;
  /// Same fraction read in a ring containing all of this ring's variables.
  RatFunc embed(const VarsPtr& target) const;

  std::string to_string() const;

 private:
  static Poly one() { return Poly::constant(nullptr, Rational(1)); }
  static RatFunc add(const RatFunc& a, const RatFunc& b, bool subtract);
  static RatFunc make_reduced(Poly num, Poly den);  // caller guarantees coprime
  Poly num_;
  Poly den_;
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }
inline std::string to_string(const RatFunc& f) { return f.to_string(); }

template <>
struct CoeffOps<RatFunc> {
  static bool is_zero(const RatFunc& f) { return f.is_zero(); }
  static std::string to_string(const RatFunc& f) { return f.to_string(); }
};

/// Polynomial read in a larger ring (every variable of p must occur in target).
Poly embed_poly(const Poly& p, const VarsPtr& target);

/// Square root in Q(t) for univariate fractions.
std::optional<RatFunc> ratfunc_sqrt(const RatFunc& f);

}  // namespace pfk3
