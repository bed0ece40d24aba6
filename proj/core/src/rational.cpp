#include "pfk3/rational.hpp"

#include <string>

#include "pfk3/cyclo3.hpp"
#include "pfk3/errors.hpp"

namespace pfk3 {

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) throw StructuralError("not a rational number: '" + s + "'");
  if (sgn(q.get_den()) == 0) throw StructuralError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

Cyclo3& Cyclo3::operator*=(const Cyclo3& o) {
  Rational bd = v_ * o.v_;
  Rational u = u_ * o.u_ - bd;
  Rational v = u_ * o.v_ + v_ * o.u_ - bd;
  u_ = std::move(u);
  v_ = std::move(v);
  return *this;
}

Cyclo3 Cyclo3::inverse() const {
  Rational n = norm();
  if (sgn(n) == 0) throw ComputationError("division by zero in Q(zeta3)");
  Cyclo3 c = conj();
  return Cyclo3(c.u() / n, c.v() / n);
}

std::string to_string(const Cyclo3& c) {
  if (c.is_rational()) return to_string(c.u());
  std::string v = c.v() == 1 ? "zeta3" : c.v() == -1 ? "-zeta3" : to_string(c.v()) + "*zeta3";
  if (sgn(c.u()) == 0) return v;
  if (v[0] == '-') return to_string(c.u()) + " - " + v.substr(1);
  return to_string(c.u()) + " + " + v;
}

}  // namespace pfk3
