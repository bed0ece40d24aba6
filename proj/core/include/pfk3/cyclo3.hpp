#pragma once

#include <string>

#include "pfk3/rational.hpp"

namespace pfk3 {

/// u + v*zeta with zeta^2 + zeta + 1 = 0.
class Cyclo3 {
 public:
  Cyclo3() = default;
  Cyclo3(long n) : u_(n) {}  // NOLINT(google-explicit-constructor)
  Cyclo3(Rational u) : u_(std::move(u)) {}  // NOLINT(google-explicit-constructor)
  Cyclo3(Rational u, Rational v) : u_(std::move(u)), v_(std::move(v)) {}

  static Cyclo3 zeta() { return Cyclo3(Rational(0), Rational(1)); }

  const Rational& u() const { return u_; }
  const Rational& v() const { return v_; }

  bool is_rational() const { return sgn(v_) == 0; }

  Cyclo3 conj() const { return Cyclo3(u_ - v_, -v_); }
  Rational norm() const { return u_ * u_ - u_ * v_ + v_ * v_; }
  Cyclo3 inverse() const;

  Cyclo3& operator+=(const Cyclo3& o) {
    u_ += o.u_;
    v_ += o.v_;
    return *this;
  }
  Cyclo3& operator-=(const Cyclo3& o) {
    u_ -= o.u_;
    v_ -= o.v_;
    return *this;
  }
  Cyclo3& operator*=(const Cyclo3& o);
  Cyclo3& operator/=(const Cyclo3& o) { return *this *= o.inverse(); }

  friend Cyclo3 operator+(Cyclo3 a, const Cyclo3& b) { return a += b; }
  friend Cyclo3 operator-(Cyclo3 a, const Cyclo3& b) { return a -= b; }
  friend Cyclo3 operator*(Cyclo3 a, const Cyclo3& b) { return a *= b; }
  friend Cyclo3 operator/(Cyclo3 a, const Cyclo3& b) { return a /= b; }
  Cyclo3 operator-() const { return Cyclo3(-u_, -v_); }

  friend bool operator==(const Cyclo3& a, const Cyclo3& b) { return a.u_ == b.u_ && a.v_ == b.v_; }

 private:
  Rational u_;
  Rational v_;
};

inline bool is_zero(const Cyclo3& c) { return sgn(c.u()) == 0 && sgn(c.v()) == 0; }
inline bool is_one(const Cyclo3& c) { return c.u() == 1 && sgn(c.v()) == 0; }
std::string to_string(const Cyclo3& c);

template <>
struct CoeffOps<Cyclo3> {
  static bool is_zero(const Cyclo3& c) { return pfk3::is_zero(c); }
  static std::string to_string(const Cyclo3& c) { return pfk3::to_string(c); }
};

}  // namespace pfk3
