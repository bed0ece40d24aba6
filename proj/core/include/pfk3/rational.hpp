#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pfk3 {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_one(const Rational& q) { return q == 1; }

std::string to_string(const Rational& q);

template <class K>
struct CoeffOps;
template <>
struct CoeffOps<Rational> {
  static bool is_zero(const Rational& q) { return sgn(q) == 0; }
  static std::string to_string(const Rational& q) { return q.get_str(); }
};
std::string to_string(const Integer& z);

/// Accepts "n" or "n/d" with optional sign.
Rational parse_rational(std::string_view text);

}  // namespace pfk3
